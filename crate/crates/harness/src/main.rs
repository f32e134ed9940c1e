use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use sdfe_harness::config::Suite;
use sdfe_harness::convergence::run_convergence;
use sdfe_harness::simulate::run_simulate;
use sdfe_harness::verify::run_verify;
use sdfe_harness::{HarnessError, RunConfig};

/// Ensemble simulation, verification and convergence studies for fractional
/// stochastic delay equations. The output directory can be overridden with
/// SDFE_OUTPUT_DIR.
#[derive(Debug, Parser)]
#[command(name = "sdfe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the configured ensemble and write statistics.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Override `ensemble.worker_count`.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
    /// Tabulate errors over successively halved time steps.
    Convergence {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Simulate { config, workers } => {
            let mut cfg = RunConfig::load(&config)?;
            if let Some(w) = workers {
                cfg.ensemble.worker_count = w;
                cfg.validate()?;
            }
            let dir = cfg.output_dir();
            let out = run_simulate(&cfg, &dir)?;
            println!(
                "{}",
                json!({"status": "ok", "output": dir, "files": out.manifest.files.len(), "config_hash": out.manifest.config_hash})
            );
        }
        Command::Verify { config, suite } => {
            let cfg = RunConfig::load(&config)?;
            let suite = suite.unwrap_or(cfg.verify.suite);
            let report = run_verify(&cfg, suite, &cfg.output_dir())?;
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {}: observed {} vs {}", c.name, c.observed, c.target);
            }
            println!(
                "{}",
                json!({"status": if report.passed { "ok" } else { "failed" }, "suite": suite, "checks": report.checks.len(), "failed": report.failed})
            );
            if !report.passed {
                return Err(HarnessError::VerifyFailed {
                    failed: report.failed,
                    total: report.checks.len(),
                });
            }
        }
        Command::Convergence { config, levels } => {
            let cfg = RunConfig::load(&config)?;
            let table = run_convergence(&cfg, levels, &cfg.output_dir())?;
            for r in &table.rows {
                println!("{}\t{:e}\t{:e}\t{}", r.level, r.dt, r.error, r.order.map(|o| format!("{o:.3}")).unwrap_or_default());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, HarnessError::VerifyFailed { .. }) {
                println!("{}", json!({"status": "error", "reason": e.reason(), "detail": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
