use serde::{Deserialize, Serialize};

use super::SamplingError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dim {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

/// Axis-aligned box of named scenario parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Dim>", into = "Vec<Dim>")]
pub struct ParameterSpace {
    dims: Vec<Dim>,
}

impl ParameterSpace {
    pub fn new(dims: Vec<Dim>) -> Result<Self, SamplingError> {
        if dims.is_empty() {
            return Err(SamplingError::InvalidSpace("no dimensions".into()));
        }
        for (i, d) in dims.iter().enumerate() {
            if !(d.lo.is_finite() && d.hi.is_finite() && d.lo < d.hi) {
                return Err(SamplingError::InvalidSpace(format!("`{}` needs finite lo < hi", d.name)));
            }
            if dims[..i].iter().any(|e| e.name == d.name) {
                return Err(SamplingError::InvalidSpace(format!("duplicate dimension `{}`", d.name)));
            }
        }
        Ok(ParameterSpace { dims })
    }

    /// Convenience constructor from `(name, lo, hi)` triples.
    pub fn from_bounds(bounds: &[(&str, f64, f64)]) -> Result<Self, SamplingError> {
        Self::new(bounds.iter().map(|&(name, lo, hi)| Dim { name: name.into(), lo, hi }).collect())
    }

    pub fn dims(&self) -> &[Dim] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.dims.iter().position(|d| d.name == name)
    }

    pub fn check(&self, x: &[f64]) -> Result<(), SamplingError> {
        if x.len() != self.len() {
            return Err(SamplingError::DimensionMismatch { got: x.len(), expected: self.len() });
        }
        if !self.contains(x) {
            return Err(SamplingError::OutOfBounds(x.to_vec()));
        }
        Ok(())
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.len() && self.dims.iter().zip(x).all(|(d, v)| *v >= d.lo && *v <= d.hi)
    }

    /// Maps a box point to `[0, 1]^d`.
    pub fn normalize(&self, x: &[f64]) -> Vec<f64> {
        self.dims.iter().zip(x).map(|(d, v)| (v - d.lo) / (d.hi - d.lo)).collect()
    }

    /// Maps a unit-box point back into the box, clamped to the bounds.
    pub fn denormalize(&self, u: &[f64]) -> Vec<f64> {
        self.dims.iter().zip(u).map(|(d, v)| (d.lo + v * (d.hi - d.lo)).clamp(d.lo, d.hi)).collect()
    }
}

impl TryFrom<Vec<Dim>> for ParameterSpace {
    type Error = SamplingError;

    fn try_from(dims: Vec<Dim>) -> Result<Self, SamplingError> {
        ParameterSpace::new(dims)
    }
}

impl From<ParameterSpace> for Vec<Dim> {
    fn from(space: ParameterSpace) -> Self {
        space.dims
    }
}
