//! Scenario parameter samplers: Halton, uniform random and GLIS.

mod glis;
mod halton;
mod random;
mod rbf;
mod space;

use thiserror::Error;

pub use glis::{idw_terms, EvaluatedSample, GlisConfig, GlisState, Phase, FEEDBACK_CLAMP};
pub use halton::{halton, radical_inverse, PRIMES};
pub use random::UniformSampler;
pub use rbf::{fit_surrogate, inverse_quadratic, Surrogate};
pub use space::{Dim, ParameterSpace};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplingError {
    #[error("invalid parameter space: {0}")]
    InvalidSpace(String),
    #[error("Halton sequence supports at most {max} dimensions, got {dims}")]
    UnsupportedDimension { dims: usize, max: usize },
    #[error("Halton index must be at least 1")]
    InvalidIndex,
    #[error("point {0:?} lies outside the parameter space")]
    OutOfBounds(Vec<f64>),
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("all samples coincide; the surrogate is undetermined")]
    DegenerateSamples,
    #[error("no samples to fit")]
    NoSamples,
    #[error("objective value is NaN")]
    NanObjective,
    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),
}

/// SplitMix64 finalizer over two words; used to derive independent seeds.
pub fn derive_seed(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
