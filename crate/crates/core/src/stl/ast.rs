use std::collections::BTreeSet;
use std::fmt;

/// Arithmetic term `f(R)` over trace variables.
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Var(String),
    Const(f64),
    Neg(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Div(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(value: f64) -> Self {
        Term::Const(value)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Self {
        Term::Neg(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Self {
        Term::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Term, b: Term) -> Self {
        Term::Sub(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Self {
        Term::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Term, b: Term) -> Self {
        Term::Div(Box::new(a), Box::new(b))
    }

    /// The set `R` of variables referenced by the term.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(name) => {
                out.insert(name.clone());
            }
            Term::Const(_) => {}
            Term::Neg(t) => t.collect_vars(out),
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub(crate) fn is_zero_literal(&self) -> bool {
        matches!(self, Term::Const(c) if *c == 0.0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(name) => f.write_str(name),
            Term::Const(c) => write!(f, "{c}"),
            Term::Neg(t) => write!(f, "-({t})"),
            Term::Add(a, b) => write!(f, "({a} + {b})"),
            Term::Sub(a, b) => write!(f, "({a} - {b})"),
            Term::Mul(a, b) => write!(f, "({a} * {b})"),
            Term::Div(a, b) => write!(f, "({a} / {b})"),
        }
    }
}

/// Time interval with bounds in seconds; `hi = None` is `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: Option<f64>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    /// `[0, inf)`, the default window when none is written.
    pub fn unbounded() -> Self {
        Interval { lo: 0.0, hi: None, lo_closed: true, hi_closed: false }
    }

    /// Closed interval `[lo, hi]`.
    ///
    /// # Panics
    /// If the bounds are negative, non-finite or out of order.
    pub fn closed(lo: f64, hi: f64) -> Self {
        assert!(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi: Some(hi), lo_closed: true, hi_closed: true }
    }

    /// `[lo, inf)`.
    pub fn starting_at(lo: f64) -> Self {
        assert!(lo.is_finite() && lo >= 0.0, "invalid interval lower bound {lo}");
        Interval { lo, hi: None, lo_closed: true, hi_closed: false }
    }

    pub fn is_unbounded_default(&self) -> bool {
        self.lo == 0.0 && self.lo_closed && self.hi.is_none()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        match self.hi {
            Some(hi) => {
                let close = if self.hi_closed { ']' } else { ')' };
                write!(f, "{open}{},{hi}{close}", self.lo)
            }
            None => write!(f, "{open}{},inf]", self.lo),
        }
    }
}

/// STL formula tree, including the sugar used by the concrete syntax.
#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    True,
    /// `term > 0` when `strict`, otherwise `term >= 0`.
    Atom {
        term: Term,
        strict: bool,
    },
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Until(Interval, Box<Formula>, Box<Formula>),
    Since(Interval, Box<Formula>, Box<Formula>),
    Eventually(Interval, Box<Formula>),
    Always(Interval, Box<Formula>),
    Once(Interval, Box<Formula>),
    Historically(Interval, Box<Formula>),
}

impl Formula {
    pub fn atom(term: Term) -> Self {
        Formula::Atom { term, strict: true }
    }

    pub fn atom_non_strict(term: Term) -> Self {
        Formula::Atom { term, strict: false }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn until(i: Interval, a: Formula, b: Formula) -> Self {
        Formula::Until(i, Box::new(a), Box::new(b))
    }

    pub fn since(i: Interval, a: Formula, b: Formula) -> Self {
        Formula::Since(i, Box::new(a), Box::new(b))
    }

    pub fn eventually(i: Interval, f: Formula) -> Self {
        Formula::Eventually(i, Box::new(f))
    }

    pub fn always(i: Interval, f: Formula) -> Self {
        Formula::Always(i, Box::new(f))
    }

    pub fn once(i: Interval, f: Formula) -> Self {
        Formula::Once(i, Box::new(f))
    }

    pub fn historically(i: Interval, f: Formula) -> Self {
        Formula::Historically(i, Box::new(f))
    }

    /// All variables referenced by atoms of the formula.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |term, _| out.extend(term.vars()));
        out
    }

    fn visit_atoms(&self, visit: &mut impl FnMut(&Term, bool)) {
        match self {
            Formula::True => {}
            Formula::Atom { term, strict } => visit(term, *strict),
            Formula::Not(f)
            | Formula::Eventually(_, f)
            | Formula::Always(_, f)
            | Formula::Once(_, f)
            | Formula::Historically(_, f) => f.visit_atoms(visit),
            Formula::Or(a, b)
            | Formula::And(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(_, a, b)
            | Formula::Since(_, a, b) => {
                a.visit_atoms(visit);
                b.visit_atoms(visit);
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::Atom { .. } => 1,
            Formula::Not(f)
            | Formula::Eventually(_, f)
            | Formula::Always(_, f)
            | Formula::Once(_, f)
            | Formula::Historically(_, f) => 1 + f.size(),
            Formula::Or(a, b)
            | Formula::And(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(_, a, b)
            | Formula::Since(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Rewrites the sugar into the core grammar
    /// `true | f > 0 | not | or | until | since`.
    ///
    /// A non-strict atom `e >= 0` becomes `not (-e > 0)`. The rewrite preserves
    /// robustness exactly.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::Atom { term, strict: true } => Formula::atom(term.clone()),
            Formula::Atom { term, strict: false } => Formula::not(Formula::atom(Term::neg(term.clone()))),
            Formula::Not(f) => Formula::not(f.desugar()),
            Formula::Or(a, b) => Formula::or(a.desugar(), b.desugar()),
            Formula::And(a, b) => Formula::not(Formula::or(Formula::not(a.desugar()), Formula::not(b.desugar()))),
            Formula::Implies(a, b) => Formula::or(Formula::not(a.desugar()), b.desugar()),
            Formula::Until(i, a, b) => Formula::until(*i, a.desugar(), b.desugar()),
            Formula::Since(i, a, b) => Formula::since(*i, a.desugar(), b.desugar()),
            Formula::Eventually(i, f) => Formula::until(*i, Formula::True, f.desugar()),
            Formula::Always(i, f) => Formula::not(Formula::until(*i, Formula::True, Formula::not(f.desugar()))),
            Formula::Once(i, f) => Formula::since(*i, Formula::True, f.desugar()),
            Formula::Historically(i, f) => Formula::not(Formula::since(*i, Formula::True, Formula::not(f.desugar()))),
        }
    }
}

fn window(i: &Interval) -> String {
    if i.is_unbounded_default() {
        String::new()
    } else {
        i.to_string()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::Atom { term, strict } => {
                write!(f, "{term} {} 0", if *strict { ">" } else { ">=" })
            }
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::Or(a, b) => write!(f, "({a} or {b})"),
            Formula::And(a, b) => write!(f, "({a} and {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Until(i, a, b) => write!(f, "({a} until{} {b})", window(i)),
            Formula::Since(i, a, b) => write!(f, "({a} since{} {b})", window(i)),
            Formula::Eventually(i, a) => write!(f, "(eventually{} {a})", window(i)),
            Formula::Always(i, a) => write!(f, "(always{} {a})", window(i)),
            Formula::Once(i, a) => write!(f, "(once{} {a})", window(i)),
            Formula::Historically(i, a) => write!(f, "(historically{} {a})", window(i)),
        }
    }
}
