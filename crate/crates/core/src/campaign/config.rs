use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CampaignError;
use crate::aeb::{RssParams, SimConstants};
use crate::sampling::{Dim, GlisConfig, ParameterSpace};

/// Scenario parameters the simulator understands.
const SCENARIO_DIMS: [&str; 2] = ["safe_dist", "ego_speed"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    Halton,
    Random,
    Glis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerConfig {
    pub kind: SamplerKind,
    pub budget: usize,
    #[serde(default)]
    pub seed: u64,
    /// GLIS settings; its `seed` is taken from the sampler block.
    #[serde(default)]
    pub glis: GlisConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NuisanceConfig {
    pub enabled: bool,
}

impl Default for NuisanceConfig {
    fn default() -> Self {
        NuisanceConfig { enabled: true }
    }
}

/// Spec whose robustness at `t = 0` drives the search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Objective {
    /// `rss_guarantee` (distance clause) or `rss` (all clauses).
    Named(String),
    Custom {
        spec: String,
    },
}

impl Default for Objective {
    fn default() -> Self {
        Objective::Named("rss_guarantee".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractConfig {
    pub assumption: String,
    pub guarantee: String,
    #[serde(rename = "T_seconds")]
    pub t_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    #[serde(default = "default_space")]
    pub space: ParameterSpace,
    pub sampler: SamplerConfig,
    #[serde(default)]
    pub sim: SimConstants,
    #[serde(default)]
    pub rss: RssParams,
    #[serde(default)]
    pub nuisance: NuisanceConfig,
    #[serde(default)]
    pub objective: Objective,
    #[serde(default)]
    pub contract: Option<ContractConfig>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub save_traces: bool,
}

fn default_space() -> ParameterSpace {
    ParameterSpace::new(vec![
        Dim { name: "safe_dist".into(), lo: 25.0, hi: 45.0 },
        Dim { name: "ego_speed".into(), lo: 9.0, hi: 11.0 },
    ])
    .expect("default space is valid")
}

impl CampaignConfig {
    /// Defaults for everything except the sampler.
    pub fn with_sampler(sampler: SamplerConfig) -> Self {
        CampaignConfig {
            space: default_space(),
            sampler,
            sim: SimConstants::default(),
            rss: RssParams::default(),
            nuisance: NuisanceConfig::default(),
            objective: Objective::default(),
            contract: None,
            seed: 0,
            save_traces: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CampaignError> {
        let cfg: CampaignConfig = serde_json::from_str(text).map_err(|e| CampaignError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, CampaignError> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| CampaignError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CampaignError> {
        let config = |msg: String| Err(CampaignError::Config(msg));
        for name in SCENARIO_DIMS {
            if self.space.index_of(name).is_none() {
                return config(format!("space must contain `{name}`"));
            }
        }
        if self.space.len() != SCENARIO_DIMS.len() {
            return config(format!("space may only contain {SCENARIO_DIMS:?}"));
        }
        if self.sampler.budget == 0 {
            return config("budget must be positive".into());
        }
        if self.sampler.kind == SamplerKind::Glis {
            self.sampler.glis.validate().map_err(|e| CampaignError::Config(e.to_string()))?;
            if self.sampler.budget < self.sampler.glis.n_initial {
                return config(format!(
                    "budget {} is smaller than n_initial {}",
                    self.sampler.budget, self.sampler.glis.n_initial
                ));
            }
        }
        self.sim.validate().map_err(|e| CampaignError::Config(e.to_string()))?;
        self.rss.validate().map_err(|e| CampaignError::Config(e.to_string()))?;
        match &self.objective {
            Objective::Named(name) if name == "rss" || name == "rss_guarantee" => {}
            Objective::Named(name) => return config(format!("unknown objective `{name}`")),
            Objective::Custom { spec } => {
                crate::stl::parse(spec).map_err(|e| CampaignError::Config(format!("objective: {e}")))?;
            }
        }
        if let Some(c) = &self.contract {
            for (what, text) in [("assumption", &c.assumption), ("guarantee", &c.guarantee)] {
                crate::stl::parse(text).map_err(|e| CampaignError::Config(format!("contract {what}: {e}")))?;
            }
            if !(c.t_seconds >= 0.0 && c.t_seconds.is_finite()) {
                return config(format!("contract T_seconds must be non-negative, got {}", c.t_seconds));
            }
        }
        Ok(())
    }
}
