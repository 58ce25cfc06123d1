//! Longitudinal car-following scenario with an emergency-braking ego vehicle.

mod rss;
mod sim;
mod specs;

use thiserror::Error;

pub use rss::{rss_safe_distance, RssParams};
pub use sim::{simulate, NuisanceParams, ScenarioParams, SimConstants, CHANNELS};
pub use specs::{assumption_spec, rss_clauses, rss_guarantee, rss_spec, BETA_MAX, CLAUSE_NAMES, INPUTS, OUTPUTS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid simulation parameters: {0}")]
    InvalidParams(String),
    #[error("negative velocity {0} in safe-distance computation")]
    NegativeVelocity(f64),
}
