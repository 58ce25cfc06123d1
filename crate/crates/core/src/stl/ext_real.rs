use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A real number extended with `+inf` and `-inf`.
///
/// Robustness values live here. Only negation, `min` and `max` are ever
/// applied to infinite values, so NaN cannot arise from the semantics.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);
    pub const NEG_INFINITY: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    /// Wraps a non-NaN float.
    ///
    /// # Panics
    /// If `value` is NaN.
    pub fn new(value: f64) -> Self {
        assert!(!value.is_nan(), "robustness value must not be NaN");
        ExtReal(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_pos_infinity(self) -> bool {
        self.0 == f64::INFINITY
    }

    pub fn is_neg_infinity(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn min(self, other: Self) -> Self {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    /// Clamps into `[-bound, bound]`, turning infinities into finite values.
    pub fn clamp_finite(self, bound: f64) -> f64 {
        self.0.clamp(-bound, bound)
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        ExtReal(-self.0)
    }
}

impl From<f64> for ExtReal {
    fn from(value: f64) -> Self {
        ExtReal::new(value)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            f.write_str("-inf")
        } else {
            // `+ 0.0` folds negative zero into zero
            write!(f, "{}", self.0 + 0.0)
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            serializer.serialize_str(if self.0 > 0.0 { "inf" } else { "-inf" })
        } else {
            serializer.serialize_f64(self.0 + 0.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtRealVisitor;

        impl Visitor<'_> for ExtRealVisitor {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or one of \"inf\", \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal, E> {
                if v.is_nan() {
                    return Err(E::custom("NaN is not a robustness value"));
                }
                Ok(ExtReal(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtReal, E> {
                match v {
                    "inf" | "+inf" => Ok(ExtReal::INFINITY),
                    "-inf" => Ok(ExtReal::NEG_INFINITY),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        deserializer.deserialize_any(ExtRealVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_swaps_infinities() {
        assert_eq!(-ExtReal::INFINITY, ExtReal::NEG_INFINITY);
        assert_eq!(-ExtReal::NEG_INFINITY, ExtReal::INFINITY);
    }

    #[test]
    fn min_max_total_over_extended_line() {
        let a = ExtReal::new(3.0);
        assert_eq!(a.min(ExtReal::NEG_INFINITY), ExtReal::NEG_INFINITY);
        assert_eq!(a.max(ExtReal::INFINITY), ExtReal::INFINITY);
        assert_eq!(ExtReal::INFINITY.min(ExtReal::NEG_INFINITY), ExtReal::NEG_INFINITY);
    }

    #[test]
    fn serde_uses_strings_for_infinities() {
        let v = vec![ExtReal::INFINITY, ExtReal::new(-1.5), ExtReal::NEG_INFINITY, ExtReal::new(-0.0)];
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["inf",-1.5,"-inf",0.0]"#);
        let back: Vec<ExtReal> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    #[should_panic]
    fn nan_is_rejected() {
        let _ = ExtReal::new(f64::NAN);
    }
}
