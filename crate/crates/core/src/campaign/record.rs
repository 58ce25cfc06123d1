use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CampaignConfig;
use crate::aeb::NuisanceParams;
use crate::contract::ContractReport;
use crate::sampling::EvaluatedSample;
use crate::stl::{ExtReal, Verdict};

/// Standard robustness of each RSS clause and of their conjunction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClauseRobustness {
    pub velocity: ExtReal,
    pub acceleration: ExtReal,
    pub distance: ExtReal,
    pub rss: ExtReal,
}

/// One simulated concrete scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub params: BTreeMap<String, f64>,
    pub nuisance: NuisanceParams,
    pub objective: ExtReal,
    /// Objective as fed to the sampler, clamped to a finite range.
    pub feedback: f64,
    pub mu: ExtReal,
    pub nu: ExtReal,
    pub verdict: Option<Verdict>,
    pub clauses: ClauseRobustness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contract: Option<ContractReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_file: Option<String>,
}

impl RunRecord {
    pub fn falsified(&self) -> bool {
        self.objective < ExtReal::ZERO
    }
}

/// Closing line of a results file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub config: CampaignConfig,
    pub runs: usize,
    pub falsifying: usize,
    pub best_robustness: Option<ExtReal>,
    pub best_params: Option<BTreeMap<String, f64>>,
}

/// A line of the JSON-lines results file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub(crate) enum Line {
    Run(RunRecord),
    Summary(Summary),
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub records: Vec<RunRecord>,
    pub falsifying: usize,
    pub best_robustness: Option<ExtReal>,
    pub best_params: Option<BTreeMap<String, f64>>,
    pub wall_clock_seconds: f64,
    /// Samples held by the GLIS sampler at the end, in acquisition order.
    pub glis_samples: Option<Vec<EvaluatedSample>>,
}

impl CampaignReport {
    pub(crate) fn summary(&self) -> Summary {
        Summary {
            config: self.config.clone(),
            runs: self.records.len(),
            falsifying: self.falsifying,
            best_robustness: self.best_robustness,
            best_params: self.best_params.clone(),
        }
    }
}
