use super::{ParameterSpace, SamplingError};

/// Bases of the first 25 Halton dimensions.
pub const PRIMES: [u64; 25] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// Radical inverse of `index` in `base`, as digits-reversed integer over `base^k`.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut reversed: u128 = 0;
    let mut denom: u128 = 1;
    while index > 0 {
        reversed = reversed * base as u128 + (index % base) as u128;
        denom *= base as u128;
        index /= base;
    }
    // The quotient can round up to 1 for indices near u64::MAX.
    (reversed as f64 / denom as f64).min(1.0 - f64::EPSILON / 2.0)
}

pub(crate) fn halton_unit(index: u64, dims: usize) -> Vec<f64> {
    PRIMES[..dims].iter().map(|&b| radical_inverse(index, b)).collect()
}

/// Halton point `index` (1-based) mapped into the box.
pub fn halton(index: u64, space: &ParameterSpace) -> Result<Vec<f64>, SamplingError> {
    if index == 0 {
        return Err(SamplingError::InvalidIndex);
    }
    if space.len() > PRIMES.len() {
        return Err(SamplingError::UnsupportedDimension { dims: space.len(), max: PRIMES.len() });
    }
    Ok(space.denormalize(&halton_unit(index, space.len())))
}
