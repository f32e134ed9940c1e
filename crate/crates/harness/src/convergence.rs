//! Empirical convergence under successive halving of `dt`.
//!
//! The reference is chosen per problem: a closed form when the noise is
//! zero and the drift is zero or constant, the classical solver on shared
//! noise at `α = 1`, and otherwise one extra, finer level whose noise paths
//! are subsampled for the coarser levels.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use sdfe_core::export::{csv_writer, sig17};
use sdfe_core::fbm::{QFbmPath, TimeGrid};
use sdfe_core::heat::DriftChoice;
use sdfe_core::solver::{classical_solve, Problem, Trajectory};
use sdfe_core::specfun::{mittag_leffler, MlParams};

use crate::config::{ProblemSection, RunConfig, SpectralDrift};
use crate::ensemble::{build_solver, path_seeds};
use crate::error::{HarnessError, Result};
use crate::output::OutputDir;

pub const CONVERGENCE_CSV: &str = "convergence.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    ClosedForm,
    Classical,
    FinestLevel,
}

impl Reference {
    fn name(self) -> &'static str {
        match self {
            Reference::ClosedForm => "closed_form",
            Reference::Classical => "classical",
            Reference::FinestLevel => "finest_level",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub level: usize,
    pub dt: f64,
    /// Path-averaged sup error.
    pub error: f64,
    /// `log2(e_{l-1} / e_l)`; absent on the first level or for zero errors.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub reference: Reference,
    pub rows: Vec<LevelRow>,
}

impl ConvergenceTable {
    /// CSV with columns `level,dt,error,order,reference`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv_writer(w);
        out.write_record(["level", "dt", "error", "order", "reference"])?;
        for r in &self.rows {
            out.write_record([
                r.level.to_string(),
                sig17(r.dt),
                sig17(r.error),
                r.order.map(sig17).unwrap_or_default(),
                self.reference.name().to_string(),
            ])?;
        }
        out.flush().map_err(|e| HarnessError::io("<convergence>", e))?;
        Ok(())
    }
}

/// Constant forcing `c` when the drift is state independent, `None` otherwise.
fn constant_forcing(section: &ProblemSection, n_modes: usize) -> Option<Vec<f64>> {
    match section {
        ProblemSection::Heat(h) => matches!(h.drift, DriftChoice::Zero).then(|| vec![0.0; n_modes]),
        ProblemSection::Spectral(s) => match &s.drift {
            SpectralDrift::Zero => Some(vec![0.0; n_modes]),
            SpectralDrift::Constant { values } => {
                let mut c = values.clone();
                c.resize(n_modes, 0.0);
                Some(c)
            }
            SpectralDrift::ScaledIdentity { .. } => None,
        },
    }
}

/// `E_α(-μt^α) φ_n(0) + c_n t^α E_{α,α+1}(-μt^α)`.
fn closed_form(problem: &Problem, forcing: &[f64], grid: TimeGrid) -> Result<Vec<Vec<f64>>> {
    let alpha = problem.alpha();
    let n = problem.n_modes();
    let mut phi0 = vec![0.0; n];
    problem.history().eval(0.0, &mut phi0);
    let e1 = MlParams::classical(alpha)?;
    let e2 = MlParams::new(alpha, alpha + 1.0)?;
    (0..grid.len())
        .map(|k| {
            let ta = grid.point(k).powf(alpha);
            problem
                .operator()
                .eigenvalues()
                .iter()
                .enumerate()
                .map(|(i, &mu)| {
                    let mut v = mittag_leffler(e1, -mu * ta)? * phi0[i];
                    if forcing[i] != 0.0 {
                        v += forcing[i] * ta * mittag_leffler(e2, -mu * ta)?;
                    }
                    Ok(v)
                })
                .collect()
        })
        .collect()
}

fn sup_against(traj: &Trajectory, exact: &[Vec<f64>]) -> f64 {
    exact
        .iter()
        .enumerate()
        .flat_map(|(k, row)| traj.at_step(k).iter().zip(row).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
}

/// Sup over the coarse grid of `|coarse(t_k) - fine(t_{k·factor})|`.
fn sup_against_fine(coarse: &Trajectory, fine: &Trajectory, factor: usize) -> f64 {
    (0..coarse.grid().len())
        .flat_map(|k| coarse.at_step(k).iter().zip(fine.at_step(k * factor)).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn convergence_table(cfg: &RunConfig, levels: usize) -> Result<ConvergenceTable> {
    if levels < 3 {
        return Err(HarnessError::config(format!("at least 3 refinement levels are required, got {levels}")));
    }
    cfg.validate()?;
    let (problem, _) = cfg.problem.build()?;
    let base = cfg.n_steps()?;
    let horizon = cfg.problem.horizon();
    let grid_at = |l: usize| TimeGrid::from_horizon(horizon, base << l);
    let seeds = path_seeds(cfg.ensemble.master_seed, cfg.ensemble.n_paths);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.ensemble.worker_count).build()?;
    let noisy = !problem.noise().is_zero();

    let (reference, errors) = if let Some(c) = constant_forcing(&cfg.problem, problem.n_modes()).filter(|_| !noisy) {
        let mut errors = Vec::new();
        for l in 0..levels {
            let g = grid_at(l)?;
            let traj = build_solver(&problem, g, cfg)?.picard(None)?;
            errors.push(sup_against(&traj, &closed_form(&problem, &c, g)?));
        }
        (Reference::ClosedForm, errors)
    } else if problem.alpha() == 1.0 {
        let mut errors = Vec::new();
        for l in 0..levels {
            let g = grid_at(l)?;
            let solver = build_solver(&problem, g, cfg)?;
            let d = pool.install(|| {
                seeds
                    .par_iter()
                    .map(|&s| {
                        let noise = solver.noise_path(s);
                        let a = solver.picard(noise.as_ref())?;
                        let b = classical_solve(&problem, g, noise.as_ref())?;
                        Ok(a.sup_distance(&b)?)
                    })
                    .collect::<Result<Vec<f64>>>()
            })?;
            errors.push(mean(&d));
        }
        (Reference::Classical, errors)
    } else {
        let fine_grid = grid_at(levels)?;
        let fine = build_solver(&problem, fine_grid, cfg)?;
        // same arithmetic as `QFbmPath::coarsen`, so the grids compare equal
        let coarse = (0..levels)
            .map(|l| {
                let factor = 1usize << (levels - l);
                let g = TimeGrid::new(fine_grid.dt() * factor as f64, fine_grid.n_steps() / factor)?;
                Ok((factor, build_solver(&problem, g, cfg)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let per_path = pool.install(|| {
            seeds
                .par_iter()
                .map(|&s| {
                    let noise: Option<QFbmPath> = fine.noise_path(s);
                    let reference = fine.picard(noise.as_ref())?;
                    coarse
                        .iter()
                        .map(|(factor, solver)| {
                            let coarse_noise = noise.as_ref().map(|q| q.coarsen(*factor)).transpose()?;
                            let traj = solver.picard(coarse_noise.as_ref())?;
                            Ok(sup_against_fine(&traj, &reference, *factor))
                        })
                        .collect::<Result<Vec<f64>>>()
                })
                .collect::<Result<Vec<Vec<f64>>>>()
        })?;
        let errors = (0..levels).map(|l| mean(&per_path.iter().map(|p| p[l]).collect::<Vec<_>>())).collect();
        (Reference::FinestLevel, errors)
    };

    let rows = errors
        .iter()
        .enumerate()
        .map(|(l, &e)| LevelRow {
            level: l,
            dt: horizon / (base << l) as f64,
            error: e,
            order: (l > 0 && e > 0.0 && errors[l - 1] > 0.0).then(|| (errors[l - 1] / e).log2()),
        })
        .collect();
    Ok(ConvergenceTable { reference, rows })
}

/// Writes `convergence.csv` and a manifest into `dir`.
pub fn run_convergence(cfg: &RunConfig, levels: usize, dir: &Path) -> Result<ConvergenceTable> {
    let table = convergence_table(cfg, levels)?;
    let mut out = OutputDir::create(dir)?;
    let mut bytes = Vec::new();
    table.write_csv(&mut bytes)?;
    out.write(CONVERGENCE_CSV, &bytes)?;
    out.finish(cfg.hash(), &path_seeds(cfg.ensemble.master_seed, cfg.ensemble.n_paths))?;
    Ok(table)
}
