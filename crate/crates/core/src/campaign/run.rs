use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::record::Line;
use super::{CampaignConfig, CampaignError, CampaignReport, ClauseRobustness, Objective, RunRecord, SamplerKind};
use crate::aeb::{rss_clauses, rss_spec, simulate, NuisanceParams, RssParams, ScenarioParams, SimConstants};
use crate::contract::Contract;
use crate::sampling::{derive_seed, halton, GlisConfig, GlisState, UniformSampler, FEEDBACK_CLAMP};
use crate::stl::{classify, input_vacuity, output_robustness, parse, robustness, Formula, Trace};

/// Produces the trace of one concrete scenario.
pub trait ScenarioRunner {
    fn simulate(&mut self, params: &ScenarioParams, nuisance: &NuisanceParams) -> Result<Trace, CampaignError>;
}

/// The built-in car-following simulator.
#[derive(Debug, Clone, Copy)]
pub struct AebRunner {
    pub constants: SimConstants,
    pub rss: RssParams,
}

impl AebRunner {
    pub fn from_config(cfg: &CampaignConfig) -> Self {
        AebRunner { constants: cfg.sim, rss: cfg.rss }
    }
}

impl ScenarioRunner for AebRunner {
    fn simulate(&mut self, params: &ScenarioParams, nuisance: &NuisanceParams) -> Result<Trace, CampaignError> {
        Ok(simulate(params, &self.constants, nuisance, &self.rss)?)
    }
}

enum Sampler {
    Halton,
    Random(Box<UniformSampler>),
    Glis(Box<GlisState>),
}

/// Runs a campaign on the built-in simulator, writing JSON lines to `out`.
pub fn run(cfg: &CampaignConfig, out: &Path) -> Result<CampaignReport, CampaignError> {
    run_with(cfg, out, &mut AebRunner::from_config(cfg))
}

/// Runs a campaign with a caller-supplied simulator.
///
/// Each record is flushed as soon as it is written, so an aborted campaign
/// leaves every completed run readable.
pub fn run_with(
    cfg: &CampaignConfig,
    out: &Path,
    runner: &mut dyn ScenarioRunner,
) -> Result<CampaignReport, CampaignError> {
    cfg.validate()?;
    let started = Instant::now();
    let objective = match &cfg.objective {
        Objective::Named(name) if name == "rss" => rss_spec(&cfg.rss).formula().clone(),
        Objective::Named(_) => rss_clauses(&cfg.rss)[2].clone(),
        Objective::Custom { spec } => parse(spec)?,
    };
    let spec = rss_spec(&cfg.rss);
    let clauses = rss_clauses(&cfg.rss);
    let contract = match &cfg.contract {
        Some(c) => Some(Contract::new(parse(&c.assumption)?, parse(&c.guarantee)?, c.t_seconds)?),
        None => None,
    };
    let mut sampler = match cfg.sampler.kind {
        SamplerKind::Halton => Sampler::Halton,
        SamplerKind::Random => Sampler::Random(Box::new(UniformSampler::new(cfg.sampler.seed))),
        SamplerKind::Glis => {
            let glis = GlisConfig { seed: cfg.sampler.seed, ..cfg.sampler.glis.clone() };
            Sampler::Glis(Box::new(GlisState::new(cfg.space.clone(), glis)?))
        }
    };
    let sd = cfg.space.index_of("safe_dist").expect("validated");
    let es = cfg.space.index_of("ego_speed").expect("validated");
    let trace_dir = cfg.save_traces.then(|| trace_dir(out));
    if let Some(dir) = &trace_dir {
        std::fs::create_dir_all(dir).map_err(|e| CampaignError::io(dir, e))?;
    }

    let file = File::create(out).map_err(|e| CampaignError::io(out, e))?;
    let mut writer = BufWriter::new(file);
    let mut write_line = |line: &Line| -> Result<(), CampaignError> {
        let text = serde_json::to_string(line).map_err(|e| CampaignError::Io(e.to_string()))?;
        writeln!(writer, "{text}").and_then(|_| writer.flush()).map_err(|e| CampaignError::io(out, e))
    };

    let mut records = Vec::with_capacity(cfg.sampler.budget);
    for run in 0..cfg.sampler.budget {
        let x = match &mut sampler {
            Sampler::Halton => halton(run as u64 + 1, &cfg.space)?,
            Sampler::Random(r) => r.sample(&cfg.space),
            Sampler::Glis(g) => g.next_point()?,
        };
        let params = ScenarioParams { safe_dist: x[sd], ego_speed: x[es] };
        let nuisance = NuisanceParams::new(derive_seed(cfg.seed, run as u64), cfg.nuisance.enabled);
        let trace = runner.simulate(&params, &nuisance)?;

        let value = robustness(&objective, &trace, 0)?;
        let mu = output_robustness(&spec, &trace, 0)?;
        let nu = input_vacuity(&spec, &trace, 0)?;
        let rho = |f: &Formula| robustness(f, &trace, 0);
        let clause_values = ClauseRobustness {
            velocity: rho(&clauses[0])?,
            acceleration: rho(&clauses[1])?,
            distance: rho(&clauses[2])?,
            rss: rho(spec.formula())?,
        };
        let contract_report = contract.as_ref().map(|c| c.evaluate(&trace)).transpose()?;
        let feedback = value.clamp_finite(FEEDBACK_CLAMP);
        if let Sampler::Glis(g) = &mut sampler {
            g.update(&x, feedback)?;
        }
        let trace_file = match &trace_dir {
            Some(dir) => {
                let path = dir.join(format!("run_{run:05}.csv"));
                let file = File::create(&path).map_err(|e| CampaignError::io(&path, e))?;
                trace.write_csv(BufWriter::new(file))?;
                Some(path.display().to_string())
            }
            None => None,
        };
        let record = RunRecord {
            run,
            params: cfg.space.dims().iter().map(|d| d.name.clone()).zip(x.iter().copied()).collect::<BTreeMap<_, _>>(),
            nuisance,
            objective: value,
            feedback,
            mu,
            nu,
            verdict: classify(mu, nu).ok(),
            clauses: clause_values,
            contract: contract_report,
            trace_file,
        };
        write_line(&Line::Run(record.clone()))?;
        records.push(record);
    }

    let falsifying = records.iter().filter(|r| r.falsified()).count();
    let best = records.iter().min_by(|a, b| a.objective.total_cmp(&b.objective));
    let report = CampaignReport {
        config: cfg.clone(),
        falsifying,
        best_robustness: best.map(|r| r.objective),
        best_params: best.map(|r| r.params.clone()),
        records,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        glis_samples: match sampler {
            Sampler::Glis(g) => Some(g.samples().to_vec()),
            _ => None,
        },
    };
    write_line(&Line::Summary(report.summary()))?;
    Ok(report)
}

fn trace_dir(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".traces");
    out.with_file_name(name)
}
