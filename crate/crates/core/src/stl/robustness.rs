use std::collections::{BTreeSet, VecDeque};

use super::ast::{Formula, Interval, Term};
use super::{ExtReal, StlError, Trace};

/// Denominators smaller than this in magnitude are rejected.
const DIVISION_EPS: f64 = 1e-12;
/// Slack, in steps, when mapping interval bounds onto the sample grid.
const GRID_TOLERANCE: f64 = 1e-6;

/// Interface-aware specification `(X, Y, φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IaSpec {
    inputs: BTreeSet<String>,
    outputs: BTreeSet<String>,
    formula: Formula,
}

impl IaSpec {
    pub fn new<I, O, S, T>(inputs: I, outputs: O, formula: Formula) -> Result<Self, StlError>
    where
        I: IntoIterator<Item = S>,
        O: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        let inputs: BTreeSet<String> = inputs.into_iter().map(Into::into).collect();
        let outputs: BTreeSet<String> = outputs.into_iter().map(Into::into).collect();
        let overlap: Vec<String> = inputs.intersection(&outputs).cloned().collect();
        if !overlap.is_empty() {
            return Err(StlError::OverlappingSets(overlap));
        }
        Ok(IaSpec { inputs, outputs, formula })
    }

    pub fn inputs(&self) -> &BTreeSet<String> {
        &self.inputs
    }

    pub fn outputs(&self) -> &BTreeSet<String> {
        &self.outputs
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }
}

/// Standard robustness `ρ(φ, w, t)`.
pub fn robustness(phi: &Formula, w: &Trace, t: usize) -> Result<ExtReal, StlError> {
    check_index(w, t)?;
    Ok(robustness_signal(phi, w)?[t])
}

/// Standard robustness at every sample.
pub fn robustness_signal(phi: &Formula, w: &Trace) -> Result<Vec<ExtReal>, StlError> {
    let scope = Scope { x: vec![true; w.var_names().len()], y: vec![false; w.var_names().len()] };
    Evaluator { w, scope }.eval(phi)
}

/// Relative robustness `ρ_X^Y(φ, w, t)`.
pub fn relative_robustness<S: AsRef<str>>(
    phi: &Formula,
    w: &Trace,
    t: usize,
    x: &[S],
    y: &[S],
) -> Result<ExtReal, StlError> {
    check_index(w, t)?;
    Ok(relative_robustness_signal(phi, w, x, y)?[t])
}

/// Relative robustness at every sample.
pub fn relative_robustness_signal<S: AsRef<str>>(
    phi: &Formula,
    w: &Trace,
    x: &[S],
    y: &[S],
) -> Result<Vec<ExtReal>, StlError> {
    let scope = Scope::new(w, x, y)?;
    Evaluator { w, scope }.eval(phi)
}

/// Output robustness `μ = ρ_Y^{S\Y}`.
pub fn output_robustness(spec: &IaSpec, w: &Trace, t: usize) -> Result<ExtReal, StlError> {
    let outputs: Vec<&str> = spec.outputs.iter().map(String::as_str).collect();
    let rest: Vec<&str> = w.var_names().iter().map(String::as_str).filter(|v| !spec.outputs.contains(*v)).collect();
    relative_robustness(&spec.formula, w, t, &outputs, &rest)
}

/// Input vacuity `ν = ρ_X^∅`.
pub fn input_vacuity(spec: &IaSpec, w: &Trace, t: usize) -> Result<ExtReal, StlError> {
    let inputs: Vec<&str> = spec.inputs.iter().map(String::as_str).collect();
    relative_robustness(&spec.formula, w, t, &inputs, &[])
}

fn check_index(w: &Trace, t: usize) -> Result<(), StlError> {
    if t >= w.len() {
        return Err(StlError::IndexOutOfRange { index: t, len: w.len() });
    }
    Ok(())
}

/// Column membership masks for `X` and `Y`.
struct Scope {
    x: Vec<bool>,
    y: Vec<bool>,
}

impl Scope {
    fn new<S: AsRef<str>>(w: &Trace, x: &[S], y: &[S]) -> Result<Self, StlError> {
        let mut scope = Scope { x: vec![false; w.var_names().len()], y: vec![false; w.var_names().len()] };
        for (names, mask) in [(x, &mut scope.x), (y, &mut scope.y)] {
            for name in names {
                let i = w.index_of(name.as_ref()).ok_or_else(|| StlError::UnknownVariable(name.as_ref().into()))?;
                mask[i] = true;
            }
        }
        let overlap: Vec<String> =
            (0..w.var_names().len()).filter(|&i| scope.x[i] && scope.y[i]).map(|i| w.var_names()[i].clone()).collect();
        if !overlap.is_empty() {
            return Err(StlError::OverlappingSets(overlap));
        }
        Ok(scope)
    }
}

enum AtomCase {
    Zero,
    Value,
    Sign,
}

/// Term with variables resolved to trace columns.
enum Compiled {
    Col(usize),
    Const(f64),
    Neg(Box<Compiled>),
    Add(Box<Compiled>, Box<Compiled>),
    Sub(Box<Compiled>, Box<Compiled>),
    Mul(Box<Compiled>, Box<Compiled>),
    Div(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(term: &Term, w: &Trace, cols: &mut BTreeSet<usize>) -> Result<Self, StlError> {
        let mut bin = |a: &Term, b: &Term| -> Result<_, StlError> {
            Ok((Box::new(Compiled::new(a, w, cols)?), Box::new(Compiled::new(b, w, cols)?)))
        };
        Ok(match term {
            Term::Var(name) => {
                let i = w.index_of(name).ok_or_else(|| StlError::UnknownVariable(name.clone()))?;
                cols.insert(i);
                Compiled::Col(i)
            }
            Term::Const(c) => Compiled::Const(*c),
            Term::Neg(t) => Compiled::Neg(Box::new(Compiled::new(t, w, cols)?)),
            Term::Add(a, b) => {
                let (a, b) = bin(a, b)?;
                Compiled::Add(a, b)
            }
            Term::Sub(a, b) => {
                let (a, b) = bin(a, b)?;
                Compiled::Sub(a, b)
            }
            Term::Mul(a, b) => {
                let (a, b) = bin(a, b)?;
                Compiled::Mul(a, b)
            }
            Term::Div(a, b) => {
                let (a, b) = bin(a, b)?;
                Compiled::Div(a, b)
            }
        })
    }

    fn eval(&self, w: &Trace, i: usize) -> Result<f64, StlError> {
        Ok(match self {
            Compiled::Col(c) => w.column_at(*c)[i],
            Compiled::Const(c) => *c,
            Compiled::Neg(t) => -t.eval(w, i)?,
            Compiled::Add(a, b) => a.eval(w, i)? + b.eval(w, i)?,
            Compiled::Sub(a, b) => a.eval(w, i)? - b.eval(w, i)?,
            Compiled::Mul(a, b) => a.eval(w, i)? * b.eval(w, i)?,
            Compiled::Div(a, b) => {
                let num = a.eval(w, i)?;
                let den = b.eval(w, i)?;
                if den.abs() < DIVISION_EPS {
                    return Err(StlError::DivisionByZero { index: i });
                }
                num / den
            }
        })
    }
}

/// Evaluates a term at one sample, with the same checks as the monitor.
pub fn eval_term(term: &Term, w: &Trace, index: usize) -> Result<f64, StlError> {
    check_index(w, index)?;
    let compiled = Compiled::new(term, w, &mut BTreeSet::new())?;
    let v = compiled.eval(w, index)?;
    if v.is_nan() {
        return Err(StlError::InvalidTrace(format!("term `{term}` is undefined at sample {index}")));
    }
    Ok(v)
}

/// Inclusive step offsets `[lo, hi]` of a window; `hi = None` is unbounded.
/// `None` overall means the window holds no grid point.
pub(crate) fn steps(interval: &Interval, dt: f64) -> Result<Option<(usize, Option<usize>)>, StlError> {
    let to_steps = |bound: f64| -> Result<usize, StlError> {
        let s = bound / dt;
        let r = s.round();
        if (s - r).abs() > GRID_TOLERANCE {
            return Err(StlError::IntervalNotOnGrid { bound, dt });
        }
        Ok(r as usize)
    };
    let mut lo = to_steps(interval.lo)?;
    if !interval.lo_closed {
        lo += 1;
    }
    let hi = match interval.hi {
        None => None,
        Some(b) => {
            let h = to_steps(b)?;
            if interval.hi_closed {
                Some(h)
            } else if h == 0 {
                return Ok(None);
            } else {
                Some(h - 1)
            }
        }
    };
    if hi.is_some_and(|h| h < lo) {
        return Ok(None);
    }
    Ok(Some((lo, hi)))
}

struct Evaluator<'a> {
    w: &'a Trace,
    scope: Scope,
}

impl Evaluator<'_> {
    fn eval(&self, phi: &Formula) -> Result<Vec<ExtReal>, StlError> {
        let n = self.w.len();
        Ok(match phi {
            Formula::True => vec![ExtReal::INFINITY; n],
            Formula::Atom { term, strict } => self.atom(term, *strict)?,
            Formula::Not(a) => self.eval(a)?.into_iter().map(|v| -v).collect(),
            Formula::Or(a, b) => zip(self.eval(a)?, self.eval(b)?, ExtReal::max),
            Formula::And(a, b) => zip(self.eval(a)?, self.eval(b)?, ExtReal::min),
            Formula::Implies(a, b) => {
                let a = self.eval(a)?.into_iter().map(|v| -v).collect();
                zip(a, self.eval(b)?, ExtReal::max)
            }
            Formula::Until(i, a, b) => until(&self.eval(a)?, &self.eval(b)?, steps(i, self.w.dt())?),
            Formula::Since(i, a, b) => since(&self.eval(a)?, &self.eval(b)?, steps(i, self.w.dt())?),
            Formula::Eventually(i, a) => future_max(&self.eval(a)?, steps(i, self.w.dt())?),
            Formula::Always(i, a) => negated(future_max(&negated(self.eval(a)?), steps(i, self.w.dt())?)),
            Formula::Once(i, a) => past_max(&self.eval(a)?, steps(i, self.w.dt())?),
            Formula::Historically(i, a) => negated(past_max(&negated(self.eval(a)?), steps(i, self.w.dt())?)),
        })
    }

    fn atom(&self, term: &Term, strict: bool) -> Result<Vec<ExtReal>, StlError> {
        let mut cols = BTreeSet::new();
        let compiled = Compiled::new(term, self.w, &mut cols)?;
        let case = if cols.iter().any(|&c| !self.scope.x[c] && !self.scope.y[c]) {
            AtomCase::Zero
        } else if cols.iter().any(|&c| !self.scope.y[c]) {
            AtomCase::Value
        } else {
            AtomCase::Sign
        };
        (0..self.w.len())
            .map(|i| {
                if let AtomCase::Zero = case {
                    return Ok(ExtReal::ZERO);
                }
                let v = compiled.eval(self.w, i)?;
                if v.is_nan() {
                    return Err(StlError::InvalidTrace(format!("term `{term}` is undefined at sample {i}")));
                }
                Ok(match case {
                    AtomCase::Value => ExtReal::new(v),
                    // sign(0)·∞ = −∞ for `e > 0`; `e >= 0` is `not (-e > 0)`, which flips the tie.
                    _ if v > 0.0 || (!strict && v == 0.0) => ExtReal::INFINITY,
                    _ => ExtReal::NEG_INFINITY,
                })
            })
            .collect()
    }
}

fn zip(a: Vec<ExtReal>, b: Vec<ExtReal>, f: fn(ExtReal, ExtReal) -> ExtReal) -> Vec<ExtReal> {
    a.into_iter().zip(b).map(|(p, q)| f(p, q)).collect()
}

fn negated(v: Vec<ExtReal>) -> Vec<ExtReal> {
    v.into_iter().map(|x| -x).collect()
}

type Window = Option<(usize, Option<usize>)>;

/// `out[t] = max over j ∈ [t−hi, t−lo] ∩ [0, n)`, `−∞` when empty.
fn past_max(v: &[ExtReal], window: Window) -> Vec<ExtReal> {
    let n = v.len();
    let Some((lo, hi)) = window else {
        return vec![ExtReal::NEG_INFINITY; n];
    };
    let mut out = Vec::with_capacity(n);
    let mut deque: VecDeque<usize> = VecDeque::new();
    for t in 0..n {
        if t >= lo {
            let j = t - lo;
            while deque.back().is_some_and(|&k| v[k] <= v[j]) {
                deque.pop_back();
            }
            deque.push_back(j);
        }
        if let Some(h) = hi {
            while deque.front().is_some_and(|&k| k + h < t) {
                deque.pop_front();
            }
        }
        out.push(deque.front().map_or(ExtReal::NEG_INFINITY, |&k| v[k]));
    }
    out
}

/// `out[t] = max over j ∈ [t+lo, t+hi] ∩ [0, n)`, `−∞` when empty.
fn future_max(v: &[ExtReal], window: Window) -> Vec<ExtReal> {
    let reversed: Vec<ExtReal> = v.iter().rev().copied().collect();
    let mut out = past_max(&reversed, window);
    out.reverse();
    out
}

fn until(a: &[ExtReal], b: &[ExtReal], window: Window) -> Vec<ExtReal> {
    let n = a.len();
    let Some((lo, hi)) = window else {
        return vec![ExtReal::NEG_INFINITY; n];
    };
    (0..n)
        .map(|t| {
            let last = hi.map_or(n - 1, |h| (t + h).min(n - 1));
            let mut best = ExtReal::NEG_INFINITY;
            let mut inner = ExtReal::INFINITY;
            for tp in t..=last {
                if tp >= t + lo {
                    best = best.max(b[tp].min(inner));
                }
                if tp > t {
                    inner = inner.min(a[tp]);
                }
            }
            best
        })
        .collect()
}

fn since(a: &[ExtReal], b: &[ExtReal], window: Window) -> Vec<ExtReal> {
    let n = a.len();
    let Some((lo, hi)) = window else {
        return vec![ExtReal::NEG_INFINITY; n];
    };
    (0..n)
        .map(|t| {
            let first = hi.map_or(0, |h| t.saturating_sub(h));
            let mut best = ExtReal::NEG_INFINITY;
            let mut inner = ExtReal::INFINITY;
            for tp in (first..=t).rev() {
                if tp + lo <= t {
                    best = best.max(b[tp].min(inner));
                }
                if tp < t {
                    inner = inner.min(a[tp]);
                }
            }
            best
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stl::parse;

    fn ramp(n: usize) -> Trace {
        Trace::from_columns(vec!["x".into()], 1.0, vec![(0..n).map(|i| i as f64).collect()]).unwrap()
    }

    fn constant(name: &str, value: f64, n: usize) -> Trace {
        Trace::from_columns(vec![name.into()], 1.0, vec![vec![value; n]]).unwrap()
    }

    fn r(v: f64) -> ExtReal {
        ExtReal::new(v)
    }

    #[test]
    fn true_is_infinite() {
        assert_eq!(robustness(&Formula::True, &ramp(3), 0).unwrap(), ExtReal::INFINITY);
    }

    #[test]
    fn always_on_constant_trace() {
        let f = parse("always (x > 0)").unwrap();
        assert_eq!(robustness(&f, &constant("x", 3.0, 11), 0).unwrap(), r(3.0));
    }

    #[test]
    fn bounded_eventually_on_ramp() {
        let f = parse("eventually[0,2] (x - 5 > 0)").unwrap();
        assert_eq!(robustness(&f, &ramp(11), 0).unwrap(), r(-3.0));
    }

    #[test]
    fn windows_are_truncated_at_trace_end() {
        let f = parse("eventually[2,4] x > 0").unwrap();
        let sig = robustness_signal(&f, &ramp(5)).unwrap();
        assert_eq!(sig, vec![r(4.0), r(4.0), r(4.0), ExtReal::NEG_INFINITY, ExtReal::NEG_INFINITY]);
        let g = parse("once[1,2] x > 0").unwrap();
        let sig = robustness_signal(&g, &ramp(5)).unwrap();
        assert_eq!(sig, vec![ExtReal::NEG_INFINITY, r(0.0), r(1.0), r(2.0), r(3.0)]);
    }

    #[test]
    fn until_uses_open_intermediate_range() {
        // a dips only at t=0, which is not strictly between t=0 and t'.
        let w = Trace::from_columns(
            vec!["a".into(), "b".into()],
            1.0,
            vec![vec![-5.0, 2.0, 2.0, 2.0], vec![-1.0, -1.0, 3.0, -1.0]],
        )
        .unwrap();
        let f = parse("a > 0 until[0,3] b > 0").unwrap();
        assert_eq!(robustness(&f, &w, 0).unwrap(), r(2.0));
        let g = parse("a > 0 since[0,3] b > 0").unwrap();
        assert_eq!(robustness(&g, &w, 3).unwrap(), r(3.0));
    }

    #[test]
    fn off_grid_bounds_are_rejected() {
        let f = parse("eventually[0,0.5] x > 0").unwrap();
        assert!(matches!(robustness(&f, &ramp(3), 0), Err(StlError::IntervalNotOnGrid { .. })));
    }

    #[test]
    fn errors() {
        let f = parse("y > 0").unwrap();
        assert_eq!(robustness(&f, &ramp(3), 0), Err(StlError::UnknownVariable("y".into())));
        let g = parse("x > 0").unwrap();
        assert_eq!(robustness(&g, &ramp(3), 3), Err(StlError::IndexOutOfRange { index: 3, len: 3 }));
        let h = parse("1 / x > 0").unwrap();
        assert_eq!(robustness(&h, &ramp(3), 1), Err(StlError::DivisionByZero { index: 0 }));
    }

    #[test]
    fn relative_atom_cases() {
        let w =
            Trace::from_columns(vec!["x".into(), "y".into(), "z".into()], 1.0, vec![vec![2.0], vec![1.0], vec![-7.0]])
                .unwrap();
        let x = ["x"];
        let y = ["y"];
        let z_atom = parse("z > 0").unwrap();
        assert_eq!(relative_robustness(&z_atom, &w, 0, &x, &y).unwrap(), r(0.0));
        let y_atom = parse("y - 1 > 0").unwrap();
        let w5 = constant("y", 5.0, 4);
        assert_eq!(relative_robustness(&y_atom, &w5, 0, &[], &["y"]).unwrap(), ExtReal::INFINITY);
        let xy = parse("x + y > 0").unwrap();
        assert_eq!(relative_robustness(&xy, &w, 0, &x, &y).unwrap(), r(3.0));
        assert!(matches!(relative_robustness(&xy, &w, 0, &["x"], &["x"]), Err(StlError::OverlappingSets(_))));
    }

    #[test]
    fn zero_sign_convention() {
        let w = constant("y", 0.0, 2);
        let strict = parse("y > 0").unwrap();
        let non_strict = parse("y >= 0").unwrap();
        assert_eq!(relative_robustness(&strict, &w, 0, &[], &["y"]).unwrap(), ExtReal::NEG_INFINITY);
        assert_eq!(relative_robustness(&non_strict, &w, 0, &[], &["y"]).unwrap(), ExtReal::INFINITY);
        assert_eq!(relative_robustness(&non_strict.desugar(), &w, 0, &[], &["y"]).unwrap(), ExtReal::INFINITY);
    }

    #[test]
    fn output_robustness_and_vacuity() {
        let a = constant("a_ego", 1.0, 5);
        let spec = IaSpec::new(Vec::<String>::new(), ["a_ego"], parse("always (a_ego > 0)").unwrap()).unwrap();
        assert_eq!(output_robustness(&spec, &a, 0).unwrap(), r(1.0));
        assert_eq!(input_vacuity(&spec, &a, 0).unwrap(), r(0.0));

        let v = constant("v_lead", 10.0, 5);
        let spec =
            IaSpec::new(["v_lead"], Vec::<String>::new(), parse("eventually (v_lead - 20 > 0)").unwrap()).unwrap();
        assert_eq!(input_vacuity(&spec, &v, 0).unwrap(), r(-10.0));
        assert_eq!(output_robustness(&spec, &v, 0).unwrap(), ExtReal::NEG_INFINITY);

        let inputs_only = IaSpec::new(["v_lead"], ["a_ego"], parse("always v_lead > 5").unwrap()).unwrap();
        let w =
            Trace::from_columns(vec!["v_lead".into(), "a_ego".into()], 1.0, vec![vec![10.0; 3], vec![0.0; 3]]).unwrap();
        assert_eq!(output_robustness(&inputs_only, &w, 0).unwrap(), ExtReal::INFINITY);

        let t = IaSpec::new(["x"], ["y"], Formula::True).unwrap();
        let w = Trace::from_columns(vec!["x".into(), "y".into()], 1.0, vec![vec![1.0], vec![1.0]]).unwrap();
        assert_eq!(output_robustness(&t, &w, 0).unwrap(), ExtReal::INFINITY);
        assert_eq!(input_vacuity(&t, &w, 0).unwrap(), ExtReal::INFINITY);
    }

    #[test]
    fn overlapping_spec_is_rejected() {
        assert!(matches!(IaSpec::new(["x"], ["x"], Formula::True), Err(StlError::OverlappingSets(_))));
    }

    #[test]
    fn steps_mapping() {
        let i = Interval { lo: 0.2, hi: Some(0.5), lo_closed: false, hi_closed: false };
        assert_eq!(steps(&i, 0.1).unwrap(), Some((3, Some(4))));
        assert_eq!(steps(&Interval::unbounded(), 0.1).unwrap(), Some((0, None)));
        let empty = Interval { lo: 0.0, hi: Some(0.0), lo_closed: true, hi_closed: false };
        assert_eq!(steps(&empty, 1.0).unwrap(), None);
    }
}
