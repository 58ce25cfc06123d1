use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ExtReal, StlError};

/// Row of the (output robustness, input vacuity) combination table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    VacuouslyTrue,
    NonvacuouslyTrue,
    NonvacuouslyFalse,
    VacuouslyFalse,
    /// `μ = ν = 0`: the trace sits on the satisfaction boundary.
    Borderline,
}

impl Verdict {
    pub fn is_satisfied(self) -> bool {
        matches!(self, Verdict::VacuouslyTrue | Verdict::NonvacuouslyTrue)
    }

    pub fn is_vacuous(self) -> bool {
        matches!(self, Verdict::VacuouslyTrue | Verdict::VacuouslyFalse)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::VacuouslyTrue => "vacuously true",
            Verdict::NonvacuouslyTrue => "non-vacuously true",
            Verdict::NonvacuouslyFalse => "non-vacuously false",
            Verdict::VacuouslyFalse => "vacuously false",
            Verdict::Borderline => "borderline",
        })
    }
}

/// Classifies a `(μ, ν)` pair.
pub fn classify(mu: ExtReal, nu: ExtReal) -> Result<Verdict, StlError> {
    let zero = ExtReal::ZERO;
    if mu.is_pos_infinity() && nu > zero {
        Ok(Verdict::VacuouslyTrue)
    } else if mu.is_neg_infinity() && nu < zero {
        Ok(Verdict::VacuouslyFalse)
    } else if nu == zero && mu.is_finite() && mu > zero {
        Ok(Verdict::NonvacuouslyTrue)
    } else if nu == zero && mu.is_finite() && mu < zero {
        Ok(Verdict::NonvacuouslyFalse)
    } else if nu == zero && mu == zero {
        Ok(Verdict::Borderline)
    } else {
        Err(StlError::InconsistentPair { mu: mu.to_string(), nu: nu.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> ExtReal {
        ExtReal::new(v)
    }

    #[test]
    fn table_rows() {
        assert_eq!(classify(ExtReal::INFINITY, r(3.0)).unwrap(), Verdict::VacuouslyTrue);
        assert_eq!(classify(ExtReal::INFINITY, ExtReal::INFINITY).unwrap(), Verdict::VacuouslyTrue);
        assert_eq!(classify(r(2.0), r(0.0)).unwrap(), Verdict::NonvacuouslyTrue);
        assert_eq!(classify(r(-2.0), r(0.0)).unwrap(), Verdict::NonvacuouslyFalse);
        assert_eq!(classify(ExtReal::NEG_INFINITY, r(-1.0)).unwrap(), Verdict::VacuouslyFalse);
        assert_eq!(classify(r(0.0), r(0.0)).unwrap(), Verdict::Borderline);
        assert_eq!(classify(r(-0.0), r(0.0)).unwrap(), Verdict::Borderline);
    }

    #[test]
    fn pairs_outside_the_table() {
        for (mu, nu) in [
            (ExtReal::INFINITY, r(0.0)),
            (ExtReal::NEG_INFINITY, r(0.0)),
            (r(1.0), r(1.0)),
            (ExtReal::INFINITY, r(-1.0)),
            (r(0.0), r(2.0)),
        ] {
            assert!(matches!(classify(mu, nu), Err(StlError::InconsistentPair { .. })), "{mu} {nu}");
        }
    }
}
