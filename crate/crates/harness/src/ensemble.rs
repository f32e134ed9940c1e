//! Ensemble runs: paths are solved in parallel and folded in path order,
//! so the statistics do not depend on the worker count.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use sdfe_core::export::{csv_writer, sig17};
use sdfe_core::fbm::TimeGrid;
use sdfe_core::rng::derive_seed;
use sdfe_core::solver::{MildSolver, Problem, Trajectory};
use sdfe_core::specfun::sin_pi;
use sdfe_core::stats::Welford;

use crate::config::RunConfig;
use crate::error::{HarnessError, Result};

/// Paths solved per parallel batch.
const BATCH: usize = 256;

/// Per-path seeds `derive_seed(master, i)`.
pub fn path_seeds(master: u64, n_paths: usize) -> Vec<u64> {
    (0..n_paths as u64).map(|i| derive_seed(master, i)).collect()
}

/// Mean and variance of every series at every grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub times: Vec<f64>,
    /// `mode_n` for mode coefficients, `z=<value>` for physical probes.
    pub series: Vec<String>,
    pub n_paths: u64,
    /// Row-major `times × series`.
    pub mean: Vec<f64>,
    pub variance: Vec<f64>,
}

impl EnsembleStats {
    fn index(&self, time: usize, series: usize) -> usize {
        time * self.series.len() + series
    }

    pub fn mean_at(&self, time: usize, series: usize) -> f64 {
        self.mean[self.index(time, series)]
    }

    pub fn variance_at(&self, time: usize, series: usize) -> f64 {
        self.variance[self.index(time, series)]
    }

    /// `sqrt(variance / n_paths)`.
    pub fn std_error_at(&self, time: usize, series: usize) -> f64 {
        (self.variance_at(time, series) / self.n_paths as f64).sqrt()
    }

    /// CSV with columns `t,series,mean,variance,std_error,n_paths`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv_writer(w);
        out.write_record(["t", "series", "mean", "variance", "std_error", "n_paths"])?;
        let n = self.n_paths.to_string();
        for (i, t) in self.times.iter().enumerate() {
            for (j, name) in self.series.iter().enumerate() {
                out.write_record([
                    sig17(*t),
                    name.clone(),
                    sig17(self.mean_at(i, j)),
                    sig17(self.variance_at(i, j)),
                    sig17(self.std_error_at(i, j)),
                    n.clone(),
                ])?;
            }
        }
        out.flush().map_err(|e| HarnessError::io("<stats>", e))?;
        Ok(())
    }
}

struct Accumulator {
    grid: TimeGrid,
    names: Vec<String>,
    /// `basis[p][n] = e_{n+1}(z_p)`.
    basis: Vec<Vec<f64>>,
    cells: Vec<Welford>,
    scratch: Vec<f64>,
}

impl Accumulator {
    fn new(grid: TimeGrid, n_modes: usize, probes: Option<&[f64]>) -> Self {
        let mut names: Vec<String> = (1..=n_modes).map(|n| format!("mode_{n}")).collect();
        let norm = (2.0 / PI).sqrt();
        let basis: Vec<Vec<f64>> = probes
            .unwrap_or(&[])
            .iter()
            .map(|&z| (1..=n_modes).map(|n| norm * sin_pi(n as f64 * z / PI)).collect())
            .collect();
        names.extend(probes.unwrap_or(&[]).iter().map(|z| format!("z={}", sig17(*z))));
        let width = names.len();
        Self {
            grid,
            names,
            basis,
            cells: vec![Welford::default(); grid.len() * width],
            scratch: vec![0.0; width],
        }
    }

    fn push(&mut self, traj: &Trajectory) {
        let width = self.names.len();
        for k in 0..self.grid.len() {
            let x = traj.at_step(k);
            self.scratch[..x.len()].copy_from_slice(x);
            for (p, e) in self.basis.iter().enumerate() {
                self.scratch[x.len() + p] = e.iter().zip(x).map(|(e, c)| e * c).sum();
            }
            for (cell, v) in self.cells[k * width..(k + 1) * width].iter_mut().zip(&self.scratch) {
                cell.push(*v);
            }
        }
    }

    fn finish(self, n_paths: u64) -> EnsembleStats {
        EnsembleStats {
            times: self.grid.points(),
            series: self.names,
            n_paths,
            mean: self.cells.iter().map(Welford::mean).collect(),
            variance: self.cells.iter().map(Welford::variance).collect(),
        }
    }
}

pub fn build_solver(problem: &Problem, grid: TimeGrid, cfg: &RunConfig) -> Result<MildSolver> {
    Ok(MildSolver::with_generator(problem, grid, cfg.ensemble.generator)?
        .tolerance(cfg.solver.tolerance)
        .max_iter(cfg.solver.max_iter)
        .initial_iterate(cfg.solver.initial_iterate))
}

/// Solves every path of the ensemble. `visit` sees the trajectories in path
/// order, on the calling thread.
pub fn run_ensemble(
    problem: &Problem,
    cfg: &RunConfig,
    probes: Option<&[f64]>,
    mut visit: impl FnMut(usize, &Trajectory) -> Result<()>,
) -> Result<EnsembleStats> {
    let grid = cfg.time_grid()?;
    let solver = build_solver(problem, grid, cfg)?;
    let seeds = path_seeds(cfg.ensemble.master_seed, cfg.ensemble.n_paths);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.ensemble.worker_count).build()?;
    let mut acc = Accumulator::new(grid, problem.n_modes(), probes);
    for (b, batch) in seeds.chunks(BATCH).enumerate() {
        let solved: Vec<_> = pool.install(|| batch.par_iter().map(|&seed| solver.solve(seed)).collect());
        for (j, result) in solved.into_iter().enumerate() {
            let path = b * BATCH + j;
            let traj = result.map_err(|source| match source {
                e @ sdfe_core::Error::NonConvergence { .. } => HarnessError::NonConvergence {
                    path,
                    seed: seeds[path],
                    source: e,
                },
                e => HarnessError::Core(e),
            })?;
            visit(path, &traj)?;
            acc.push(&traj);
        }
    }
    Ok(acc.finish(seeds.len() as u64))
}
