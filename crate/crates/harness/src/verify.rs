//! Verification suites: each check records an observed value, the bound or
//! target it is compared with, and whether it passed.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use sdfe_core::fbm::{covariance, sampler, GeneratorKind, HurstParameter, TimeGrid};
use sdfe_core::operators::{
    s_alpha_apply, s_alpha_multiplier, s_alpha_norm_bound, semigroup_apply, subordination_oracle, t_alpha_apply,
    t_alpha_multiplier, GrowthBound, ModeVector, SpectralOperator,
};
use sdfe_core::rng::derive_seed;
use sdfe_core::solver::{
    classical_solve, picard_envelope, picard_solve, solve_mild, ConstantHistory, ConstantNoise, FnDrift, Forcing,
    InitialIterate, LinearDelayDrift, MildSolver, Problem, SegmentView,
};
use sdfe_core::specfun::{gamma, mainardi_laplace_check, mainardi_moment, mainardi_rule, mittag_leffler, MlParams};
use sdfe_core::stats::{ks_two_sample, moment_with_se, Welford};
use sdfe_core::stochint::{second_moment_bound, wiener_integral, StepIntegrand};

use crate::config::{RunConfig, Suite, Tolerances, VerifySection};
use crate::error::{HarnessError, Result};
use crate::output::OutputDir;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    /// Bound or target the observed value is compared with.
    pub target: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, observed: f64, target: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            target,
            pass: observed <= target,
        }
    }

    pub fn at_least(name: impl Into<String>, observed: f64, target: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            target,
            pass: observed >= target,
        }
    }

    pub fn below(name: impl Into<String>, observed: f64, target: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            target,
            pass: observed < target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let failed = checks.iter().filter(|c| !c.pass).count();
        Self {
            suite,
            passed: failed == 0,
            failed,
            checks,
        }
    }
}

const ALPHAS: [f64; 4] = [0.55, 0.6, 0.75, 0.9];
const HURSTS: [f64; 3] = [0.6, 0.75, 0.9];

fn hurst(h: f64) -> HurstParameter {
    HurstParameter::new(h).expect("Hurst constants lie in (1/2, 1)")
}

fn ml(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    Ok(mittag_leffler(MlParams::new(alpha, beta)?, z)?)
}

pub fn specfun_checks(tol: &Tolerances) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for alpha in ALPHAS {
        let rule = mainardi_rule(alpha)?;
        for delta in [0.0, 0.5, 1.0, 2.0, 3.0] {
            let got = mainardi_moment(alpha, delta, &rule)?;
            let exact = gamma(delta + 1.0)? / gamma(alpha * delta + 1.0)?;
            checks.push(Check::at_most(
                format!("specfun.moment[alpha={alpha},delta={delta}]"),
                (got - exact).abs(),
                tol.moment,
            ));
        }
        for lambda in [0.0, 0.5, 1.0, 2.0, 5.0] {
            let (lhs, rhs) = mainardi_laplace_check(alpha, lambda, &rule)?;
            checks.push(Check::at_most(
                format!("specfun.laplace[alpha={alpha},lambda={lambda}]"),
                (lhs - rhs).abs(),
                tol.laplace,
            ));
        }
        let mass = mainardi_moment(alpha, 0.0, &rule)?;
        checks.push(Check::at_most(format!("specfun.mass[alpha={alpha}]"), (mass - 1.0).abs(), tol.mass));
    }
    Ok(checks)
}

/// Sample times of the covariance checks, as fractions of the unit horizon.
const FBM_TIMES: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
/// Index pairs into [`FBM_TIMES`].
const FBM_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (3, 3), (0, 2), (1, 3), (2, 3)];
const GENERATORS: [GeneratorKind; 3] = [GeneratorKind::Cholesky, GeneratorKind::Circulant, GeneratorKind::Volterra];

pub fn fbm_checks(settings: &VerifySection) -> Result<Vec<Check>> {
    let n = settings.fbm_steps;
    if n == 0 || !n.is_multiple_of(4) {
        return Err(HarnessError::config(format!("fbm_steps = {n} must be a positive multiple of 4")));
    }
    let tol = &settings.tolerances;
    let grid = TimeGrid::from_horizon(1.0, n)?;
    let idx: Vec<usize> = FBM_TIMES.iter().map(|t| (t * n as f64).round() as usize).collect();
    let mut checks = Vec::new();
    for (hi, hv) in HURSTS.into_iter().enumerate() {
        let h = hurst(hv);
        let mut samples: Vec<Vec<[f64; 4]>> = Vec::new();
        for (gi, kind) in GENERATORS.into_iter().enumerate() {
            let s = sampler(kind, h, grid)?;
            let master = derive_seed(settings.seed, (10 * hi + gi) as u64);
            let paths: Vec<[f64; 4]> = (0..settings.fbm_paths as u64)
                .into_par_iter()
                .map(|i| {
                    let p = s.generate(derive_seed(master, i));
                    let v = p.values();
                    [v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]]
                })
                .collect();
            for (a, b) in FBM_PAIRS {
                let xs: Vec<f64> = paths.iter().map(|p| p[a]).collect();
                let ys: Vec<f64> = paths.iter().map(|p| p[b]).collect();
                let (m, se) = moment_with_se(&xs, &ys);
                let exact = covariance(h, FBM_TIMES[a], FBM_TIMES[b]);
                checks.push(Check::at_most(
                    format!("fbm.covariance[{kind},H={hv},t={},s={}] (standard errors)", FBM_TIMES[a], FBM_TIMES[b]),
                    (m - exact).abs() / se,
                    tol.standard_errors,
                ));
            }
            samples.push(paths);
        }
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            for (ti, t) in [(1, 0.5), (3, 1.0)] {
                let xs: Vec<f64> = samples[a].iter().map(|p| p[ti]).collect();
                let ys: Vec<f64> = samples[b].iter().map(|p| p[ti]).collect();
                let (_, p) = ks_two_sample(&xs, &ys);
                checks.push(Check::at_least(
                    format!("fbm.ks[{}-{},H={hv},t={t}] (p-value)", GENERATORS[a], GENERATORS[b]),
                    p,
                    tol.ks_level,
                ));
            }
        }
    }
    Ok(checks)
}

struct Integrand {
    name: &'static str,
    phi: StepIntegrand,
    lambda: Vec<f64>,
}

fn integrand_family(g: TimeGrid) -> Result<Vec<Integrand>> {
    Ok(vec![
        Integrand {
            name: "constant",
            phi: StepIntegrand::scalar_from_fn(g, |_| 1.5)?,
            lambda: vec![1.0],
        },
        Integrand {
            name: "ramp",
            phi: StepIntegrand::scalar_from_fn(g, |t| 1.0 + 2.0 * t)?,
            lambda: vec![1.0],
        },
        Integrand {
            name: "three-mode",
            phi: StepIntegrand::diagonal_from_fn(g, 3, |t, n| [1.0, 0.5 + t, (3.0 * t).cos()][n])?,
            lambda: vec![1.0, 0.25, 1.0 / 9.0],
        },
    ])
}

pub fn stochint_checks(settings: &VerifySection) -> Result<Vec<Check>> {
    let tol = &settings.tolerances;
    let g = TimeGrid::from_horizon(1.0, settings.stochint_steps)?;
    let mut checks = Vec::new();
    for (hi, hv) in HURSTS.into_iter().enumerate() {
        let h = hurst(hv);
        for (fi, f) in integrand_family(g)?.iter().enumerate() {
            let sampler = sdfe_core::fbm::QFbmSampler::new(GeneratorKind::Circulant, h, g, f.lambda.clone())?;
            for t in [0.5, 1.0] {
                let phi = f.phi.restricted(t)?;
                let master = derive_seed(settings.seed ^ 0x57_0c, (10 * hi + fi) as u64);
                let sq = (0..settings.stochint_paths as u64)
                    .into_par_iter()
                    .map(|i| {
                        let q = sampler.generate(derive_seed(master, i));
                        Ok(wiener_integral(&phi, &q)?.iter().map(|x| x * x).sum::<f64>())
                    })
                    .collect::<Result<Vec<f64>>>()?;
                let w: Welford = sq.into_iter().collect();
                let bound = second_moment_bound(h, t, &f.phi, &f.lambda)?;
                checks.push(Check::at_most(
                    format!("stochint.second_moment[{},H={hv},t={t}]", f.name),
                    w.mean(),
                    bound + tol.standard_errors * w.std_error(),
                ));
                if f.name == "constant" {
                    let sharp = 1.0 / (2.0 * hv);
                    checks.push(Check::at_most(
                        format!("stochint.constant_ratio[H={hv},t={t}] (distance from 1/2H)"),
                        (w.mean() / bound - sharp).abs(),
                        tol.sharpness,
                    ));
                }
            }
        }
    }
    Ok(checks)
}

pub fn operator_checks(tol: &Tolerances) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for alpha in [0.6, 0.75, 0.9] {
        let rule = mainardi_rule(alpha)?;
        for mu in [1.0, 4.0, 25.0] {
            for t in [0.1, 1.0, 2.0] {
                let ta = t_alpha_multiplier(alpha, mu, t)?;
                let sa = s_alpha_multiplier(alpha, mu, t)?;
                let ot = subordination_oracle(alpha, mu, t, false, &rule)?;
                let os = subordination_oracle(alpha, mu, t, true, &rule)?;
                let tag = format!("alpha={alpha},mu={mu},t={t}");
                checks.push(Check::at_most(format!("operators.t_alpha[{tag}]"), (ta - ot).abs(), tol.operator_quadrature));
                checks.push(Check::at_most(format!("operators.s_alpha[{tag}]"), (sa - os).abs(), tol.operator_quadrature));
            }
        }
    }

    let heat = SpectralOperator::dirichlet_laplacian(16)?;
    let growing = SpectralOperator::new(vec![0.0, 0.5, 3.0], GrowthBound { m: 1.5, omega: 0.7 })?;
    for (name, op) in [("heat", &heat), ("growing", &growing)] {
        for alpha in [0.55, 0.6, 0.75, 0.9, 1.0] {
            for t in [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0] {
                let (obs, bound) = s_alpha_norm_bound(alpha, op, t)?;
                checks.push(Check::at_most(format!("operators.norm_bound[{name},alpha={alpha},t={t}]"), obs, bound));
            }
        }
    }

    let a = SpectralOperator::dirichlet_laplacian(8)?;
    let v = ModeVector::new((1..=8).map(|n| 1.0 / n as f64).collect())?;
    for t in [0.0, 0.003, 0.1, 0.7, 2.0] {
        let s = semigroup_apply(&a, t, &v)?;
        let ta = t_alpha_apply(1.0, &a, t, &v)?;
        let sa = s_alpha_apply(1.0, &a, t, &v)?;
        let diff = (0..8).map(|n| (s[n] - ta[n]).abs().max((s[n] - sa[n]).abs())).fold(0.0, f64::max);
        checks.push(Check::at_most(format!("operators.alpha_one[t={t}]"), diff, tol.reduction));
    }
    Ok(checks)
}

fn relaxation_problem(alpha: f64) -> Result<Problem> {
    Ok(Problem::builder(alpha, hurst(0.7), SpectralOperator::contractive(vec![1.0])?, 1.0, 0.25)
        .drift(Forcing(|_t: f64, out: &mut [f64]| out[0] = 1.0))
        .build()?)
}

/// Scalar relaxation against `1 - E_α(-t^α)` and the pure initial-value
/// solution against `E_α(-n² t^α) φ_n(0)`.
pub fn solver_anchor_checks(tol: &Tolerances) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let alpha = 0.75;
    let p = relaxation_problem(alpha)?;
    let mut errors = Vec::new();
    for n in [128, 256, 512] {
        let g = p.grid(n)?;
        let traj = solve_mild(&p, g, 0)?;
        let mut err: f64 = 0.0;
        for k in 0..=n {
            let exact = 1.0 - ml(alpha, 1.0, -g.point(k).powf(alpha))?;
            err = err.max((traj.at_step(k)[0] - exact).abs());
        }
        errors.push(err);
    }
    checks.push(Check::at_most("solver.relaxation[alpha=0.75,dt=1/512]", errors[2], tol.relaxation));
    for (i, w) in errors.windows(2).enumerate() {
        checks.push(Check::below(format!("solver.relaxation.monotone[level {}]", i + 1), w[1], w[0]));
    }

    let alpha = 0.8;
    let phi0 = vec![1.0, -0.5, 0.25, 2.0];
    let p = Problem::builder(alpha, hurst(0.7), SpectralOperator::dirichlet_laplacian(4)?, 2.0, 0.5)
        .initial(ConstantHistory(phi0.clone()))
        .build()?;
    let g = p.grid(200)?;
    let traj = solve_mild(&p, g, 0)?;
    let mut err: f64 = 0.0;
    for k in 0..=200 {
        for (n, &c) in phi0.iter().enumerate() {
            let mu = ((n + 1) * (n + 1)) as f64;
            err = err.max((traj.at_step(k)[n] - c * ml(alpha, 1.0, -mu * g.point(k).powf(alpha))?).abs());
        }
    }
    checks.push(Check::at_most("solver.pure_initial_value", err, tol.pure_initial));
    Ok(checks)
}

/// Linear delay benchmark `x' = -x + x(t - r)` at `dt = 1/256`.
pub fn picard_checks(tol: &Tolerances) -> Result<Vec<Check>> {
    let p = Problem::builder(0.75, hurst(0.7), SpectralOperator::contractive(vec![1.0])?, 1.0, 0.25)
        .initial(ConstantHistory(vec![1.0]))
        .drift(LinearDelayDrift { k: 1.0 })
        .lipschitz_hint(1.0)
        .build()?;
    let g = p.grid(256)?;
    let traj = picard_solve(&p, g, None, tol.picard, 64, InitialIterate::Zero)?;
    let diag = traj.diagnostics();
    let d = &diag.sup_differences;
    let k = picard_envelope(&p)?;
    let mut checks = vec![
        Check::at_most("solver.picard.iterations", diag.iterations as f64, tol.picard_iterations as f64),
        Check::below("solver.picard.final_difference", *d.last().unwrap_or(&f64::INFINITY), tol.picard),
    ];
    let mut factorial = 1.0;
    for n in 1..=d.len() {
        if n > 1 {
            factorial *= (n - 1) as f64;
        }
        let envelope = k.powi(n as i32 - 1) / factorial * d[0];
        checks.push(Check::at_most(format!("solver.picard.envelope[n={n}]"), d[n - 1], envelope * (1.0 + 1e-12)));
    }
    Ok(checks)
}

fn classical_problem() -> Result<Problem> {
    let n_modes = 4;
    Ok(Problem::builder(1.0, hurst(0.7), SpectralOperator::dirichlet_laplacian(n_modes)?, 1.0, 0.25)
        .initial(ConstantHistory((0..n_modes).map(|n| 1.0 / (n + 1) as f64).collect()))
        .drift(FnDrift(|_t: f64, seg: SegmentView<'_>, out: &mut [f64]| {
            for (o, (x, y)) in out.iter_mut().zip(seg.current().iter().zip(seg.delayed())) {
                *o = 0.5 * y + x.tanh();
            }
        }))
        .noise(ConstantNoise(vec![1.0; n_modes]))
        .lipschitz_hint(2.5)
        .integrability_exponent(4.0)
        .build()?)
}

/// Fractional solver at `α = 1` against the classical exponential integrator
/// on shared noise, `dt = 1/256`.
pub fn classical_checks(settings: &VerifySection) -> Result<Vec<Check>> {
    let p = classical_problem()?;
    let g = p.grid(256)?;
    let solver = MildSolver::new(&p, g)?;
    let master = derive_seed(settings.seed, 0xc1a5);
    let distances = (0..settings.classical_paths as u64)
        .into_par_iter()
        .map(|i| {
            let noise = solver.noise_path(derive_seed(master, i));
            let mild = solver.picard(noise.as_ref())?;
            let classical = classical_solve(&p, g, noise.as_ref())?;
            Ok(mild.sup_distance(&classical)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst = distances.iter().copied().fold(0.0, f64::max);
    Ok(vec![Check::at_most(
        format!("solver.classical[paths={}]", settings.classical_paths),
        worst,
        settings.tolerances.classical_dt_factor * g.dt(),
    )])
}

pub fn run_suite(suite: Suite, settings: &VerifySection) -> Result<Vec<Check>> {
    let tol = &settings.tolerances;
    Ok(match suite {
        Suite::Specfun => specfun_checks(tol)?,
        Suite::Fbm => fbm_checks(settings)?,
        Suite::Stochint => stochint_checks(settings)?,
        Suite::Operators => operator_checks(tol)?,
        Suite::Solver => {
            let mut c = solver_anchor_checks(tol)?;
            c.extend(picard_checks(tol)?);
            c.extend(classical_checks(settings)?);
            c
        }
        Suite::All => {
            let mut c = Vec::new();
            for s in [Suite::Specfun, Suite::Fbm, Suite::Stochint, Suite::Operators, Suite::Solver] {
                c.extend(run_suite(s, settings)?);
            }
            c
        }
    })
}

/// Runs `suite`, writes `verify_<suite>.json` and a manifest into `dir`.
pub fn run_verify(cfg: &RunConfig, suite: Suite, dir: &Path) -> Result<VerifyReport> {
    let report = VerifyReport::new(suite, run_suite(suite, &cfg.verify)?);
    let mut out = OutputDir::create(dir)?;
    out.write_json(&format!("verify_{}.json", suite.name()), &report)?;
    out.finish(cfg.hash(), &[cfg.verify.seed])?;
    Ok(report)
}
