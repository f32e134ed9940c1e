use std::path::Path;

use crate::config::{Format, RunConfig};
use crate::ensemble::{path_seeds, run_ensemble, EnsembleStats};
use crate::error::Result;
use crate::output::{Manifest, OutputDir};

pub const STATS_CSV: &str = "stats.csv";
pub const STATS_JSON: &str = "stats.json";
pub const HYPOTHESES_JSON: &str = "hypotheses.json";

#[derive(Debug)]
pub struct SimulateOutput {
    pub stats: EnsembleStats,
    pub manifest: Manifest,
}

/// Validates, solves the ensemble and writes statistics plus manifest into `dir`.
pub fn run_simulate(cfg: &RunConfig, dir: &Path) -> Result<SimulateOutput> {
    cfg.validate()?;
    let (problem, report) = cfg.problem.build()?;
    let mut out = OutputDir::create(dir)?;
    out.write_json(HYPOTHESES_JSON, &report)?;

    let probes = cfg.problem.probes();
    let stats = run_ensemble(&problem, cfg, probes.as_deref(), |i, traj| {
        if cfg.output.write_paths {
            let mut bytes = Vec::new();
            traj.write_csv(&mut bytes)?;
            out.write(&format!("paths/path_{i:05}.csv"), &bytes)?;
        }
        Ok(())
    })?;

    for format in &cfg.output.formats {
        match format {
            Format::Csv => {
                let mut bytes = Vec::new();
                stats.write_csv(&mut bytes)?;
                out.write(STATS_CSV, &bytes)?;
            }
            Format::Json => {
                out.write_json(STATS_JSON, &stats)?;
            }
        }
    }
    let seeds = path_seeds(cfg.ensemble.master_seed, cfg.ensemble.n_paths);
    let manifest = out.finish(cfg.hash(), &seeds)?;
    Ok(SimulateOutput { stats, manifest })
}
