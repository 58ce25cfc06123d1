#![allow(dead_code)]

use std::collections::BTreeSet;

use csi::stl::{Formula, Interval, Term, Trace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn term_value(term: &Term, w: &Trace, t: usize) -> f64 {
    match term {
        Term::Var(name) => w.column(name).unwrap()[t],
        Term::Const(c) => *c,
        Term::Neg(a) => -term_value(a, w, t),
        Term::Add(a, b) => term_value(a, w, t) + term_value(b, w, t),
        Term::Sub(a, b) => term_value(a, w, t) - term_value(b, w, t),
        Term::Mul(a, b) => term_value(a, w, t) * term_value(b, w, t),
        Term::Div(a, b) => term_value(a, w, t) / term_value(b, w, t),
    }
}

/// Sample offsets `[lo, hi]` covered by an interval on a grid of step `dt`.
fn offsets(i: &Interval, dt: f64, len: usize) -> (usize, usize) {
    let lo = (i.lo / dt).round() as usize;
    let hi = match i.hi {
        Some(h) => (h / dt).round() as usize,
        None => len,
    };
    (lo, hi)
}

/// Direct, memo-free transcription of the quantitative semantics for one
/// time index. `x` and `y` are the relative-robustness scopes; `None` for `x`
/// means every trace variable.
pub struct Oracle<'a> {
    pub w: &'a Trace,
    pub x: Option<BTreeSet<String>>,
    pub y: BTreeSet<String>,
}

impl<'a> Oracle<'a> {
    pub fn standard(w: &'a Trace) -> Self {
        Oracle { w, x: None, y: BTreeSet::new() }
    }

    pub fn relative(w: &'a Trace, x: &[&str], y: &[&str]) -> Self {
        Oracle { w, x: Some(x.iter().map(|s| s.to_string()).collect()), y: y.iter().map(|s| s.to_string()).collect() }
    }

    fn atom(&self, term: &Term, strict: bool, t: usize) -> f64 {
        let r = term.vars();
        let in_xy = r.iter().all(|v| self.x.as_ref().is_none_or(|x| x.contains(v)) || self.y.contains(v));
        if !in_xy {
            return 0.0;
        }
        let f = term_value(term, self.w, t);
        if !r.iter().all(|v| self.y.contains(v)) {
            return f;
        }
        let holds = if strict { f > 0.0 } else { f >= 0.0 };
        if holds {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    }

    /// Robustness signal of `phi`, one naive evaluation per index.
    pub fn signal(&self, phi: &Formula) -> Vec<f64> {
        let n = self.w.len();
        let dt = self.w.dt();
        match phi {
            Formula::True => vec![f64::INFINITY; n],
            Formula::Atom { term, strict } => (0..n).map(|t| self.atom(term, *strict, t)).collect(),
            Formula::Not(a) => self.signal(a).into_iter().map(|v| -v).collect(),
            Formula::Or(a, b) => zip(self.signal(a), self.signal(b), f64::max),
            Formula::And(a, b) => zip(self.signal(a), self.signal(b), f64::min),
            Formula::Implies(a, b) => zip(self.signal(a), self.signal(b), |p, q| (-p).max(q)),
            Formula::Until(i, a, b) => {
                let (pa, pb) = (self.signal(a), self.signal(b));
                let (lo, hi) = offsets(i, dt, n);
                (0..n)
                    .map(|t| {
                        let mut best = f64::NEG_INFINITY;
                        for tp in t + lo..=(t + hi).min(n - 1) {
                            let mut v = pb[tp];
                            for &inner in &pa[(t + 1).min(tp)..tp] {
                                v = v.min(inner);
                            }
                            best = best.max(v);
                        }
                        best
                    })
                    .collect()
            }
            Formula::Since(i, a, b) => {
                let (pa, pb) = (self.signal(a), self.signal(b));
                let (lo, hi) = offsets(i, dt, n);
                (0..n)
                    .map(|t| {
                        let mut best = f64::NEG_INFINITY;
                        if t >= lo {
                            for tp in t.saturating_sub(hi)..=t - lo {
                                let mut v = pb[tp];
                                for &inner in &pa[tp + 1..t.max(tp + 1)] {
                                    v = v.min(inner);
                                }
                                best = best.max(v);
                            }
                        }
                        best
                    })
                    .collect()
            }
            Formula::Eventually(i, a) => self.window(i, a, true, false),
            Formula::Always(i, a) => self.window(i, a, true, true),
            Formula::Once(i, a) => self.window(i, a, false, false),
            Formula::Historically(i, a) => self.window(i, a, false, true),
        }
    }

    fn window(&self, i: &Interval, a: &Formula, future: bool, inf: bool) -> Vec<f64> {
        let p = self.signal(a);
        let n = p.len();
        let (lo, hi) = offsets(i, self.w.dt(), n);
        (0..n)
            .map(|t| {
                let range: Vec<usize> = if future {
                    (t + lo..=(t + hi).min(n - 1)).collect()
                } else if t >= lo {
                    (t.saturating_sub(hi)..=t - lo).collect()
                } else {
                    Vec::new()
                };
                if inf {
                    range.iter().fold(f64::INFINITY, |m, &k| m.min(p[k]))
                } else {
                    range.iter().fold(f64::NEG_INFINITY, |m, &k| m.max(p[k]))
                }
            })
            .collect()
    }
}

fn zip(a: Vec<f64>, b: Vec<f64>, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    a.into_iter().zip(b).map(|(p, q)| f(p, q)).collect()
}

/// Boolean satisfaction signal.
pub fn satisfied(phi: &Formula, w: &Trace) -> Vec<bool> {
    let n = w.len();
    let dt = w.dt();
    match phi {
        Formula::True => vec![true; n],
        Formula::Atom { term, strict } => (0..n)
            .map(|t| {
                let f = term_value(term, w, t);
                if *strict {
                    f > 0.0
                } else {
                    f >= 0.0
                }
            })
            .collect(),
        Formula::Not(a) => satisfied(a, w).into_iter().map(|v| !v).collect(),
        Formula::Or(a, b) => bzip(satisfied(a, w), satisfied(b, w), |p, q| p || q),
        Formula::And(a, b) => bzip(satisfied(a, w), satisfied(b, w), |p, q| p && q),
        Formula::Implies(a, b) => bzip(satisfied(a, w), satisfied(b, w), |p, q| !p || q),
        Formula::Until(i, a, b) => {
            let (sa, sb) = (satisfied(a, w), satisfied(b, w));
            let (lo, hi) = offsets(i, dt, n);
            (0..n)
                .map(|t| (t + lo..=(t + hi).min(n - 1)).any(|tp| sb[tp] && sa[(t + 1).min(tp)..tp].iter().all(|&v| v)))
                .collect()
        }
        Formula::Since(i, a, b) => {
            let (sa, sb) = (satisfied(a, w), satisfied(b, w));
            let (lo, hi) = offsets(i, dt, n);
            (0..n)
                .map(|t| {
                    t >= lo
                        && (t.saturating_sub(hi)..=t - lo)
                            .any(|tp| sb[tp] && sa[tp + 1..t.max(tp + 1)].iter().all(|&v| v))
                })
                .collect()
        }
        Formula::Eventually(i, a) => satisfied(&Formula::until(*i, Formula::True, (**a).clone()), w),
        Formula::Once(i, a) => satisfied(&Formula::since(*i, Formula::True, (**a).clone()), w),
        Formula::Always(i, a) => {
            satisfied(&Formula::eventually(*i, Formula::not((**a).clone())), w).into_iter().map(|v| !v).collect()
        }
        Formula::Historically(i, a) => {
            satisfied(&Formula::once(*i, Formula::not((**a).clone())), w).into_iter().map(|v| !v).collect()
        }
    }
}

fn bzip(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(p, q)| f(p, q)).collect()
}

pub const DTS: [f64; 3] = [0.1, 0.5, 1.0];

/// Window of at most 8 samples, or with `unbounded`, sometimes `[lo, inf)`.
pub fn random_interval(rng: &mut ChaCha8Rng, dt: f64, unbounded: bool) -> Interval {
    let lo = rng.gen_range(0..=4usize);
    if unbounded && rng.gen_bool(0.2) {
        return if lo == 0 { Interval::unbounded() } else { Interval::starting_at(lo as f64 * dt) };
    }
    let hi = rng.gen_range(lo..=8usize);
    Interval::closed(lo as f64 * dt, hi as f64 * dt)
}

pub fn random_term(rng: &mut ChaCha8Rng, vars: &[&str]) -> Term {
    let var = |rng: &mut ChaCha8Rng| Term::var(vars[rng.gen_range(0..vars.len())]);
    let constant = |rng: &mut ChaCha8Rng| Term::constant(rng.gen_range(-8..=8) as f64 * 0.25);
    match rng.gen_range(0..6) {
        0 => var(rng),
        1 => Term::sub(var(rng), constant(rng)),
        2 => Term::add(var(rng), var(rng)),
        3 => Term::sub(var(rng), var(rng)),
        4 => Term::mul(constant(rng), var(rng)),
        _ => Term::neg(var(rng)),
    }
}

pub fn random_formula(rng: &mut ChaCha8Rng, depth: usize, vars: &[&str], dt: f64) -> Formula {
    formula_with(rng, depth, vars, dt, true)
}

pub fn formula_with(rng: &mut ChaCha8Rng, depth: usize, vars: &[&str], dt: f64, unbounded: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.05) {
            Formula::True
        } else {
            let term = random_term(rng, vars);
            if rng.gen_bool(0.3) {
                Formula::atom_non_strict(term)
            } else {
                Formula::atom(term)
            }
        };
    }
    let sub = |rng: &mut ChaCha8Rng| formula_with(rng, depth - 1, vars, dt, unbounded);
    match rng.gen_range(0..11) {
        0 => Formula::not(sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::and(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 => {
            let i = random_interval(rng, dt, unbounded);
            Formula::until(i, sub(rng), sub(rng))
        }
        5 => {
            let i = random_interval(rng, dt, unbounded);
            Formula::since(i, sub(rng), sub(rng))
        }
        6 => Formula::eventually(random_interval(rng, dt, unbounded), sub(rng)),
        7 => Formula::always(random_interval(rng, dt, unbounded), sub(rng)),
        8 => Formula::once(random_interval(rng, dt, unbounded), sub(rng)),
        9 => Formula::historically(random_interval(rng, dt, unbounded), sub(rng)),
        _ => Formula::and(sub(rng), Formula::not(sub(rng))),
    }
}

pub fn random_trace(rng: &mut ChaCha8Rng, vars: &[&str], dt: f64) -> Trace {
    let n = rng.gen_range(1..=64usize);
    let columns = vars
        .iter()
        .map(|_| (0..n).map(|_| if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(-3.0..3.0) }).collect())
        .collect();
    Trace::from_columns(vars.iter().map(|v| v.to_string()).collect(), dt, columns).unwrap()
}

/// A random formula together with a trace over the same variables.
pub fn random_case(seed: u64) -> (Formula, Trace) {
    case_with(seed, true)
}

pub fn case_with(seed: u64, unbounded: bool) -> (Formula, Trace) {
    let mut rng = rng(seed);
    let nvars = rng.gen_range(1..=VARS.len());
    let vars = &VARS[..nvars];
    let dt = DTS[rng.gen_range(0..DTS.len())];
    let depth = rng.gen_range(1..=4);
    let phi = formula_with(&mut rng, depth, vars, dt, unbounded);
    let w = random_trace(&mut rng, vars, dt);
    (phi, w)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        a == b
    } else {
        (a - b).abs() <= tol
    }
}
