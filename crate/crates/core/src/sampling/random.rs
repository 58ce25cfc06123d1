use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ParameterSpace;

/// Seeded uniform sampler over a box.
#[derive(Debug, Clone)]
pub struct UniformSampler {
    rng: ChaCha8Rng,
}

impl UniformSampler {
    pub fn new(seed: u64) -> Self {
        UniformSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn sample(&mut self, space: &ParameterSpace) -> Vec<f64> {
        space
            .dims()
            .iter()
            .map(|d| {
                let u: f64 = self.rng.gen();
                (d.lo + u * (d.hi - d.lo)).clamp(d.lo, d.hi)
            })
            .collect()
    }
}
