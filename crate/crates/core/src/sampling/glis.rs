use std::f64::consts::FRAC_2_PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::halton::PRIMES;
use super::rbf::{distance, fit_surrogate, MERGE_TOL};
use super::{derive_seed, radical_inverse, ParameterSpace, SamplingError, Surrogate, UniformSampler};

/// Objective values are clamped to `±FEEDBACK_CLAMP` before they reach the sampler.
pub const FEEDBACK_CLAMP: f64 = 1e6;

/// Half-width of the per-coordinate refinement window, as a fraction of the box.
const REFINE_HALF_WIDTH: f64 = 0.05;
const GOLDEN_ITERATIONS: usize = 40;
const MIN_SEPARATION: f64 = 1e-9;
/// Candidates closer than this (unit-box distance) to an existing sample are skipped.
const EXCLUSION_RADIUS: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GlisConfig {
    pub n_initial: usize,
    pub alpha: f64,
    pub delta: f64,
    pub eps_svd: f64,
    pub rbf_epsilon: f64,
    pub candidate_count: usize,
    pub seed: u64,
}

impl Default for GlisConfig {
    fn default() -> Self {
        GlisConfig {
            n_initial: 10,
            alpha: 1.0,
            delta: 0.5,
            eps_svd: 0.01,
            rbf_epsilon: 0.2,
            candidate_count: 1000,
            seed: 0,
        }
    }
}

impl GlisConfig {
    pub fn validate(&self) -> Result<(), SamplingError> {
        let bad = |msg: &str| Err(SamplingError::InvalidConfig(msg.into()));
        if self.n_initial == 0 {
            return bad("n_initial must be positive");
        }
        if self.candidate_count == 0 {
            return bad("candidate_count must be positive");
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) || !(self.delta >= 0.0 && self.delta.is_finite()) {
            return bad("alpha and delta must be finite and non-negative");
        }
        if !(self.eps_svd > 0.0 && self.eps_svd.is_finite())
            || !(self.rbf_epsilon > 0.0 && self.rbf_epsilon.is_finite())
        {
            return bad("eps_svd and rbf_epsilon must be finite and positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluatedSample {
    pub x: Vec<f64>,
    pub f: f64,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    InitialSampling,
    ActiveLearning,
}

/// IDW uncertainty `s` and exploration `z` at unit-box point `u`.
pub fn idw_terms(nodes: &[Vec<f64>], values: &[f64], fhat: f64, u: &[f64]) -> (f64, f64) {
    let mut weights = Vec::with_capacity(nodes.len());
    for node in nodes {
        let d = distance(node, u);
        if d < MERGE_TOL {
            return (0.0, 0.0);
        }
        weights.push(1.0 / (d * d));
    }
    let total: f64 = weights.iter().sum();
    let var: f64 = weights.iter().zip(values).map(|(w, f)| w / total * (f - fhat).powi(2)).sum();
    (var.sqrt(), FRAC_2_PI * (1.0 / total).atan())
}

/// Surrogate-guided sampler: seeded random initial points, then minimization
/// of `f̂ − α s − δ ΔF z`.
#[derive(Debug, Clone)]
pub struct GlisState {
    config: GlisConfig,
    space: ParameterSpace,
    samples: Vec<EvaluatedSample>,
    unit: Vec<Vec<f64>>,
    surrogate: Option<Surrogate>,
    phase: Phase,
    initial: UniformSampler,
    acquired: usize,
}

impl GlisState {
    pub fn new(space: ParameterSpace, config: GlisConfig) -> Result<Self, SamplingError> {
        config.validate()?;
        if space.len() > PRIMES.len() {
            return Err(SamplingError::UnsupportedDimension { dims: space.len(), max: PRIMES.len() });
        }
        let initial = UniformSampler::new(config.seed);
        Ok(GlisState {
            config,
            space,
            samples: Vec::new(),
            unit: Vec::new(),
            surrogate: None,
            phase: Phase::InitialSampling,
            initial,
            acquired: 0,
        })
    }

    pub fn config(&self) -> &GlisConfig {
        &self.config
    }

    pub fn space(&self) -> &ParameterSpace {
        &self.space
    }

    pub fn samples(&self) -> &[EvaluatedSample] {
        &self.samples
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// RBF coefficients, present once active learning has started.
    pub fn rbf_coefficients(&self) -> Option<&[f64]> {
        self.surrogate.as_ref().map(Surrogate::coefficients)
    }

    /// Next point to evaluate: a random draw while initial sampling, else [`propose`](Self::propose).
    pub fn next_point(&mut self) -> Result<Vec<f64>, SamplingError> {
        match self.phase {
            Phase::InitialSampling => Ok(self.initial.sample(&self.space)),
            Phase::ActiveLearning => self.propose(),
        }
    }

    /// Records an evaluation and refits the surrogate.
    pub fn update(&mut self, x: &[f64], f: f64) -> Result<(), SamplingError> {
        self.space.check(x)?;
        if f.is_nan() {
            return Err(SamplingError::NanObjective);
        }
        let f = f.clamp(-FEEDBACK_CLAMP, FEEDBACK_CLAMP);
        let u = self.space.normalize(x);
        let index = self.acquired;
        self.acquired += 1;
        match self.unit.iter().position(|v| distance(v, &u) < MERGE_TOL) {
            Some(i) => {
                self.samples[i].f = f;
                self.samples[i].index = index;
            }
            None => {
                self.samples.push(EvaluatedSample { x: x.to_vec(), f, index });
                self.unit.push(u);
            }
        }
        if self.samples.len() >= self.config.n_initial {
            self.phase = Phase::ActiveLearning;
        }
        if self.phase == Phase::ActiveLearning {
            self.surrogate = Some(fit_surrogate(&self.samples, &self.space, &self.config)?);
        }
        Ok(())
    }

    fn active(&self) -> Result<&Surrogate, SamplingError> {
        self.surrogate
            .as_ref()
            .ok_or_else(|| SamplingError::InvalidConfig("the surrogate is fitted only in the active phase".into()))
    }

    /// Surrogate value `f̂(x)` at a box point.
    pub fn surrogate_value(&self, x: &[f64]) -> Result<f64, SamplingError> {
        Ok(self.active()?.eval(&self.space.normalize(x)))
    }

    /// `(s, z)` at a box point.
    pub fn idw(&self, x: &[f64]) -> Result<(f64, f64), SamplingError> {
        let u = self.space.normalize(x);
        let fhat = self.active()?.eval(&u);
        Ok(idw_terms(&self.unit, &self.values(), fhat, &u))
    }

    /// Acquisition `a(x)`; lower is better.
    pub fn acquisition(&self, x: &[f64]) -> Result<f64, SamplingError> {
        let surrogate = self.active()?;
        Ok(self.acquisition_unit(surrogate, &self.values(), &self.space.normalize(x)))
    }

    fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.f).collect()
    }

    fn acquisition_unit(&self, surrogate: &Surrogate, values: &[f64], u: &[f64]) -> f64 {
        let fhat = surrogate.eval(u);
        let (s, z) = idw_terms(&self.unit, values, fhat, u);
        let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &f| (a.min(f), b.max(f)));
        let spread = (hi - lo).max(1e-6);
        fhat - self.config.alpha * s - self.config.delta * spread * z
    }

    /// Minimizes the acquisition over shifted Halton candidates, then refines
    /// each coordinate by golden-section search.
    pub fn propose(&self) -> Result<Vec<f64>, SamplingError> {
        let surrogate = self.active()?;
        let values = self.values();
        let units: Vec<Vec<f64>> = self.samples.iter().map(|s| self.space.normalize(&s.x)).collect();
        let excluded = |u: &[f64]| units.iter().any(|n| distance(n, u) < EXCLUSION_RADIUS);
        let acq = |u: &[f64]| {
            if excluded(u) {
                f64::INFINITY
            } else {
                self.acquisition_unit(surrogate, &values, u)
            }
        };
        let dims = self.space.len();

        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(self.config.seed, self.acquired as u64));
        let shift: Vec<f64> = (0..dims).map(|_| rng.gen()).collect();
        let mut best_u = Vec::new();
        let mut best = f64::INFINITY;
        for k in 1..=self.config.candidate_count as u64 {
            let u: Vec<f64> = (0..dims).map(|d| (radical_inverse(k, PRIMES[d]) + shift[d]).fract()).collect();
            let a = acq(&u);
            if a < best || best_u.is_empty() {
                best = a;
                best_u = u;
            }
        }

        for d in 0..dims {
            let lo = (best_u[d] - REFINE_HALF_WIDTH).max(0.0);
            let hi = (best_u[d] + REFINE_HALF_WIDTH).min(1.0);
            let mut probe = best_u.clone();
            let (t, a) = golden_section(lo, hi, |t| {
                probe[d] = t;
                acq(&probe)
            });
            if a < best {
                best = a;
                best_u[d] = t;
            }
        }

        let mut u = best_u;
        for attempt in 1..=1000usize {
            let x = self.space.denormalize(&u);
            if self.samples.iter().all(|s| distance(&s.x, &x) >= MIN_SEPARATION) {
                return Ok(x);
            }
            let d = (attempt - 1) % dims;
            let step = 1e-6 * attempt as f64;
            u[d] = if u[d] + step <= 1.0 { u[d] + step } else { u[d] - step };
        }
        Ok(self.space.denormalize(&u))
    }
}

fn golden_section(mut a: f64, mut b: f64, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..GOLDEN_ITERATIONS {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
