use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use csi::campaign::{self, CampaignConfig, CampaignError};
use csi::stl::{StlError, Trace};

#[derive(Parser)]
#[command(name = "csi", version, about = "Specification-guided critical scenario search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a falsification campaign and write JSON-lines results.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monitor a CSV trace against a specification file.
    Monitor {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        /// Input (environment) variables.
        #[arg(long, value_delimiter = ',')]
        inputs: Vec<String>,
        /// Output (system) variables.
        #[arg(long, value_delimiter = ',')]
        outputs: Vec<String>,
        /// Sample index at which to evaluate.
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    /// Export run records as a scatter CSV.
    Scatter {
        #[arg(long)]
        results: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn campaign_failure(e: CampaignError) -> Failure {
    match e {
        CampaignError::Config(_) => Failure::Usage(e.to_string()),
        other => Failure::Runtime(other.to_string()),
    }
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run { config, out } => {
            let cfg = CampaignConfig::from_path(&config).map_err(campaign_failure)?;
            let report = campaign::run(&cfg, &out).map_err(campaign_failure)?;
            let best = report.best_robustness.map_or("n/a".to_string(), |b| b.to_string());
            eprintln!(
                "{} runs, {} falsifying, best robustness {best}, {:.2} s",
                report.records.len(),
                report.falsifying,
                report.wall_clock_seconds
            );
        }
        Command::Monitor { trace, spec, inputs, outputs, t } => {
            let text =
                std::fs::read_to_string(&spec).map_err(|e| Failure::Runtime(format!("{}: {e}", spec.display())))?;
            let w = Trace::read_csv_path(&trace).map_err(|e| Failure::Runtime(e.to_string()))?;
            let outcome = campaign::monitor(&w, &text, &inputs, &outputs, t).map_err(|e| match e {
                StlError::OverlappingSets(_) => Failure::Usage(e.to_string()),
                other => Failure::Runtime(other.to_string()),
            })?;
            println!("robustness: {}", outcome.robustness);
            println!("output_robustness: {}", outcome.mu);
            println!("input_vacuity: {}", outcome.nu);
            match outcome.verdict {
                Ok(v) => println!("verdict: {v}"),
                Err(e) => return Err(Failure::Runtime(e.to_string())),
            }
        }
        Command::Scatter { results, out } => {
            let rows = campaign::export_scatter(&results, &out).map_err(campaign_failure)?;
            eprintln!("{rows} rows written to {}", out.display());
        }
    }
    Ok(())
}
