//! Campaign orchestration: sampler → simulator → monitors → feedback.

mod config;
mod monitor;
mod record;
mod run;
mod scatter;

use thiserror::Error;

pub use config::{CampaignConfig, ContractConfig, NuisanceConfig, Objective, SamplerConfig, SamplerKind};
pub use monitor::{monitor, MonitorOutcome};
pub use record::{CampaignReport, ClauseRobustness, RunRecord, Summary};
pub use run::{run, run_with, AebRunner, ScenarioRunner};
pub use scatter::{export_scatter, SCATTER_HEADER};

use crate::aeb::SimError;
use crate::contract::ContractError;
use crate::sampling::SamplingError;
use crate::stl::StlError;

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error("malformed results file: {0}")]
    Results(String),
    #[error(transparent)]
    Stl(#[from] StlError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Contract(#[from] ContractError),
}

impl CampaignError {
    pub(crate) fn io(path: &std::path::Path, e: impl std::fmt::Display) -> Self {
        CampaignError::Io(format!("{}: {e}", path.display()))
    }
}
