use nalgebra::{DMatrix, DVector};

use super::{EvaluatedSample, GlisConfig, ParameterSpace, SamplingError};

/// Normalized distance below which two samples are the same point.
pub(crate) const MERGE_TOL: f64 = 1e-12;

/// `1 / (1 + (ε r)^2)`.
pub fn inverse_quadratic(epsilon: f64, r: f64) -> f64 {
    1.0 / (1.0 + (epsilon * r).powi(2))
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// Radial-basis interpolant over unit-box nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Surrogate {
    nodes: Vec<Vec<f64>>,
    coefficients: Vec<f64>,
    epsilon: f64,
}

impl Surrogate {
    /// Solves `M β = F` by SVD, discarding singular values below `eps_svd · σ_max`.
    pub fn fit(nodes: Vec<Vec<f64>>, values: &[f64], epsilon: f64, eps_svd: f64) -> Result<Self, SamplingError> {
        let n = nodes.len();
        if n == 0 {
            return Err(SamplingError::NoSamples);
        }
        let m = DMatrix::from_fn(n, n, |i, j| inverse_quadratic(epsilon, distance(&nodes[i], &nodes[j])));
        let svd = m.svd(true, true);
        let sigma_max = svd.singular_values.max();
        let f = DVector::from_column_slice(values);
        let beta = svd
            .solve(&f, eps_svd * sigma_max)
            .map_err(|e| SamplingError::InvalidConfig(format!("surrogate solve failed: {e}")))?;
        Ok(Surrogate { nodes, coefficients: beta.iter().copied().collect(), epsilon })
    }

    /// Surrogate value at a unit-box point.
    pub fn eval(&self, u: &[f64]) -> f64 {
        self.nodes
            .iter()
            .zip(&self.coefficients)
            .map(|(node, b)| b * inverse_quadratic(self.epsilon, distance(u, node)))
            .sum()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }
}

/// Keeps the latest value for samples closer than the merge tolerance.
pub(crate) fn merge_duplicates(samples: &[EvaluatedSample], space: &ParameterSpace) -> Vec<(Vec<f64>, f64)> {
    let mut merged: Vec<(Vec<f64>, f64)> = Vec::with_capacity(samples.len());
    for s in samples {
        let u = space.normalize(&s.x);
        match merged.iter_mut().find(|(v, _)| distance(v, &u) < MERGE_TOL) {
            Some(slot) => slot.1 = s.f,
            None => merged.push((u, s.f)),
        }
    }
    merged
}

/// Fits the surrogate to evaluated samples in the unit-normalized box.
pub fn fit_surrogate(
    samples: &[EvaluatedSample],
    space: &ParameterSpace,
    cfg: &GlisConfig,
) -> Result<Surrogate, SamplingError> {
    if samples.is_empty() {
        return Err(SamplingError::NoSamples);
    }
    let merged = merge_duplicates(samples, space);
    if merged.len() == 1 && samples.len() > 1 {
        return Err(SamplingError::DegenerateSamples);
    }
    let (nodes, values): (Vec<_>, Vec<_>) = merged.into_iter().unzip();
    Surrogate::fit(nodes, &values, cfg.rbf_epsilon, cfg.eps_svd)
}
