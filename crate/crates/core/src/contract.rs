//! Assume/guarantee contracts, evaluated by rewriting to STL.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stl::{robustness, robustness_signal, ExtReal, Formula, Interval, StlError, Trace};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContractError {
    #[error("causality window must be a finite non-negative number of seconds, got {0}")]
    InvalidWindow(f64),
    #[error(transparent)]
    Stl(#[from] StlError),
}

/// Contract `(φ, ψ)` with causality window `T` in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct Contract {
    assumption: Formula,
    guarantee: Formula,
    window_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractReport {
    pub classical_robustness: ExtReal,
    pub refined_robustness: ExtReal,
    pub classical_verdict: bool,
    pub refined_verdict: bool,
    pub assumption_violation_time: Option<usize>,
    pub guarantee_violation_time: Option<usize>,
}

impl Contract {
    pub fn new(assumption: Formula, guarantee: Formula, window_t: f64) -> Result<Self, ContractError> {
        if !(window_t.is_finite() && window_t >= 0.0) {
            return Err(ContractError::InvalidWindow(window_t));
        }
        Ok(Contract { assumption, guarantee, window_t })
    }

    pub fn assumption(&self) -> &Formula {
        &self.assumption
    }

    pub fn guarantee(&self) -> &Formula {
        &self.guarantee
    }

    pub fn window_t(&self) -> f64 {
        self.window_t
    }

    /// `(always φ) -> (always ψ)`.
    pub fn classical(&self) -> Formula {
        Formula::implies(
            Formula::always(Interval::unbounded(), self.assumption.clone()),
            Formula::always(Interval::unbounded(), self.guarantee.clone()),
        )
    }

    /// `always ((historically[0,T] φ) -> ψ)`.
    pub fn refined(&self) -> Formula {
        Formula::always(
            Interval::unbounded(),
            Formula::implies(
                Formula::historically(Interval::closed(0.0, self.window_t), self.assumption.clone()),
                self.guarantee.clone(),
            ),
        )
    }

    /// Evaluates both readings at `t = 0` and locates the first violations.
    pub fn evaluate(&self, w: &Trace) -> Result<ContractReport, ContractError> {
        let classical_robustness = robustness(&self.classical(), w, 0)?;
        let refined_robustness = robustness(&self.refined(), w, 0)?;
        let first_negative = |f: &Formula| -> Result<Option<usize>, StlError> {
            Ok(robustness_signal(f, w)?.iter().position(|r| *r < ExtReal::ZERO))
        };
        Ok(ContractReport {
            classical_robustness,
            refined_robustness,
            classical_verdict: classical_robustness >= ExtReal::ZERO,
            refined_verdict: refined_robustness >= ExtReal::ZERO,
            assumption_violation_time: first_negative(&self.assumption)?,
            guarantee_violation_time: first_negative(&self.guarantee)?,
        })
    }
}
