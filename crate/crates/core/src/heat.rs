//! Fractional stochastic heat equation on `[0, π]` with Dirichlet boundary
//! conditions, in the eigenbasis `e_n(z) = √(2/π) sin(nz)` of `∂²/∂z²`
//! (eigenvalues `-n²`).
//!
//! Physical data are projected onto the first `N` modes by composite Simpson
//! quadrature on `4N + 1` equispaced points of `[0, π]`.

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::export::{csv_writer, sig17};
use crate::fbm::HurstParameter;
use crate::hypotheses::{assess, HypothesisInputs, HypothesisReport};
use crate::operators::SpectralOperator;
use crate::solver::{ConstantHistory, ConstantNoise, Drift, LinearDelayDrift, Problem, SegmentView, Trajectory, ZeroDrift};
use crate::specfun::sin_pi;

/// Spatial profile on `[0, π]`, or its mode coefficients directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Zero,
    /// `amplitude · sin(k z)`.
    Sine { k: usize, amplitude: f64 },
    /// `amplitude · z(π - z)(1 + skew · z/π)`.
    Polynomial { amplitude: f64, skew: f64 },
    /// Coefficients of `e_1, e_2, ...`; missing ones are zero.
    Modes { coefficients: Vec<f64> },
}

impl Profile {
    fn value(&self, z: f64) -> f64 {
        match self {
            Profile::Zero | Profile::Modes { .. } => 0.0,
            Profile::Sine { k, amplitude } => amplitude * sin_pi(*k as f64 * z / PI),
            Profile::Polynomial { amplitude, skew } => amplitude * z * (PI - z) * (1.0 + skew * z / PI),
        }
    }

    /// First `n` sine coefficients.
    pub fn coefficients(&self, basis: &SineBasis) -> Result<Vec<f64>> {
        let out = match self {
            Profile::Zero => vec![0.0; basis.n_modes()],
            Profile::Modes { coefficients } => {
                let mut c = coefficients.clone();
                c.resize(basis.n_modes(), 0.0);
                c
            }
            _ => {
                let samples: Vec<f64> = basis.nodes.iter().map(|&z| self.value(z)).collect();
                basis.project(&samples)
            }
        };
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("projection of {self:?} is not finite")));
        }
        Ok(out)
    }
}

/// Nonlinearity catalog for `f(t, x_t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DriftChoice {
    Zero,
    /// `k · ξ(t - r, z)`.
    ScaledIdentity { k: f64 },
    /// `k · tanh(ξ(t - r, z))`, pointwise in `z`.
    BoundedSigmoid { k: f64 },
}

impl DriftChoice {
    /// `C_f` of the integrated Lipschitz condition: `k²` for both nonzero
    /// choices (`tanh` is 1-Lipschitz and projection does not expand).
    pub fn lipschitz_constant(&self) -> f64 {
        match *self {
            DriftChoice::Zero => 0.0,
            DriftChoice::ScaledIdentity { k } | DriftChoice::BoundedSigmoid { k } => k * k,
        }
    }
}

fn default_noise_decay() -> f64 {
    2.0
}

fn default_output_points() -> usize {
    65
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeatConfig {
    pub alpha: f64,
    pub hurst: f64,
    pub n_modes: usize,
    pub horizon: f64,
    pub delay: f64,
    /// `λ_n = n^{-noise_decay}`, must exceed 1 for a trace-class `Q`.
    #[serde(default = "default_noise_decay")]
    pub noise_decay: f64,
    pub drift: DriftChoice,
    /// Time-independent noise coefficient `γ(z)`.
    pub noise: Profile,
    /// Initial history, constant on `[-r, 0]`.
    pub initial: Profile,
    /// Exponent `p` of the noise integrability condition.
    pub integrability_exponent: f64,
    /// Number of equispaced output points on `[0, π]`.
    #[serde(default = "default_output_points")]
    pub output_points: usize,
}

impl Default for HeatConfig {
    fn default() -> Self {
        Self {
            alpha: 0.75,
            hurst: 0.7,
            n_modes: 32,
            horizon: 1.0,
            delay: 0.25,
            noise_decay: 2.0,
            drift: DriftChoice::BoundedSigmoid { k: 0.5 },
            noise: Profile::Polynomial { amplitude: 1.0, skew: 1.0 },
            initial: Profile::Sine { k: 1, amplitude: 1.0 },
            integrability_exponent: 3.0,
            output_points: default_output_points(),
        }
    }
}

impl HeatConfig {
    /// Checks everything except the noise integrability condition, which
    /// [`validate_hypotheses`] reports.
    pub fn check(&self) -> Result<()> {
        if !(self.alpha > 0.5 && self.alpha < 1.0) {
            return Err(Error::invalid(format!("heat equation needs alpha in (1/2, 1), got {}", self.alpha)));
        }
        HurstParameter::new(self.hurst)?;
        if self.n_modes == 0 {
            return Err(Error::invalid("n_modes must be positive"));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) || !(self.delay > 0.0 && self.delay.is_finite()) {
            return Err(Error::invalid(format!("horizon {} and delay {} must be positive", self.horizon, self.delay)));
        }
        if !(self.noise_decay > 1.0) {
            return Err(Error::invalid(format!("noise decay {} must exceed 1", self.noise_decay)));
        }
        if self.output_points < 2 {
            return Err(Error::invalid("output_points must be at least 2"));
        }
        Ok(())
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (1..=self.n_modes).map(|n| (n as f64).powf(-self.noise_decay)).collect()
    }

    /// `z_i = iπ/(points-1)`.
    pub fn output_grid(&self) -> Vec<f64> {
        let m = self.output_points - 1;
        (0..=m).map(|i| if i == m { PI } else { PI * i as f64 / m as f64 }).collect()
    }
}

/// Sine basis sampled on the Simpson nodes used for projection.
#[derive(Debug, Clone)]
pub struct SineBasis {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `values[n][i] = e_{n+1}(z_i)`.
    values: Vec<Vec<f64>>,
}

impl SineBasis {
    pub fn new(n_modes: usize) -> Self {
        let intervals = 4 * n_modes;
        let h = PI / intervals as f64;
        let nodes: Vec<f64> = (0..=intervals).map(|i| if i == intervals { PI } else { h * i as f64 }).collect();
        let weights = (0..=intervals)
            .map(|i| {
                let c = if i == 0 || i == intervals {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * h / 3.0
            })
            .collect();
        let norm = (2.0 / PI).sqrt();
        let values = (1..=n_modes).map(|n| nodes.iter().map(|&z| norm * sin_pi(n as f64 * z / PI)).collect()).collect();
        Self { nodes, weights, values }
    }

    pub fn n_modes(&self) -> usize {
        self.values.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `⟨u, e_n⟩` from samples of `u` on the nodes.
    pub fn project(&self, samples: &[f64]) -> Vec<f64> {
        self.values
            .iter()
            .map(|e| e.iter().zip(samples).zip(&self.weights).map(|((e, u), w)| w * e * u).sum())
            .collect()
    }

    /// `Σ_n c_n e_n(z_i)` on the nodes.
    pub fn synthesize(&self, coefficients: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (c, e) in coefficients.iter().zip(&self.values) {
            for (o, v) in out.iter_mut().zip(e) {
                *o += c * v;
            }
        }
    }
}

/// `k · P_N tanh(ξ(t - r, ·))`.
pub struct SigmoidDrift {
    k: f64,
    basis: SineBasis,
}

impl SigmoidDrift {
    pub fn new(k: f64, n_modes: usize) -> Self {
        Self {
            k,
            basis: SineBasis::new(n_modes),
        }
    }
}

impl Drift for SigmoidDrift {
    fn eval(&self, _t: f64, segment: SegmentView<'_>, out: &mut [f64]) {
        let mut u = vec![0.0; self.basis.nodes.len()];
        self.basis.synthesize(segment.delayed(), &mut u);
        u.iter_mut().for_each(|v| *v = v.tanh());
        for (o, p) in out.iter_mut().zip(self.basis.project(&u)) {
            *o = self.k * p;
        }
    }
}

/// The equation in mode form: `μ_n = n²`, `M = 1`, `ω = 0`.
pub fn build_problem(config: &HeatConfig) -> Result<Problem> {
    config.check()?;
    let n = config.n_modes;
    let basis = SineBasis::new(n);
    let report = validate_hypotheses(config)?;
    if let Some(v) = report.hard_violation() {
        return Err(v);
    }
    Problem::builder(
        config.alpha,
        HurstParameter::new(config.hurst)?,
        SpectralOperator::dirichlet_laplacian(n)?,
        config.horizon,
        config.delay,
    )
    .initial(ConstantHistory(config.initial.coefficients(&basis)?))
    .noise(ConstantNoise(config.noise.coefficients(&basis)?))
    .eigenvalues(config.eigenvalues())
    .lipschitz_hint(config.drift.lipschitz_constant())
    .integrability_exponent(config.integrability_exponent)
    .shared_drift(make_drift(config.drift, n).into())
    .build()
}

pub fn validate_hypotheses(config: &HeatConfig) -> Result<HypothesisReport> {
    config.check()?;
    let basis = SineBasis::new(config.n_modes);
    let noise = ConstantNoise(config.noise.coefficients(&basis)?);
    let drift = make_drift(config.drift, config.n_modes);
    assess(&HypothesisInputs {
        alpha: config.alpha,
        p: config.integrability_exponent,
        horizon: config.horizon,
        delay: config.delay,
        eigenvalues: &config.eigenvalues(),
        noise: &noise,
        drift: drift.as_ref(),
        lipschitz_hint: config.drift.lipschitz_constant(),
    })
}

fn make_drift(choice: DriftChoice, n_modes: usize) -> Box<dyn Drift> {
    match choice {
        DriftChoice::Zero => Box::new(ZeroDrift),
        DriftChoice::ScaledIdentity { k } => Box::new(LinearDelayDrift { k }),
        DriftChoice::BoundedSigmoid { k } => Box::new(SigmoidDrift::new(k, n_modes)),
    }
}

/// `ξ(t_i, z_j)` on the stored times of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField {
    pub times: Vec<f64>,
    pub z: Vec<f64>,
    /// `values[i][j] = ξ(times[i], z[j])`.
    pub values: Vec<Vec<f64>>,
}

impl PhysicalField {
    /// CSV with columns `t,z,value`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv_writer(w);
        out.write_record(["t", "z", "value"])?;
        for (t, row) in self.times.iter().zip(&self.values) {
            for (z, v) in self.z.iter().zip(row) {
                out.write_record([sig17(*t), sig17(*z), sig17(*v)])?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// `ξ(t, z) = Σ_n x_n(t) √(2/π) sin(nz)`. Exactly zero at `z = 0` and `z = π`.
pub fn to_physical(traj: &Trajectory, z_points: &[f64]) -> Result<PhysicalField> {
    if let Some(z) = z_points.iter().find(|z| !(0.0..=PI).contains(*z)) {
        return Err(Error::domain(format!("z = {z} outside [0, pi]")));
    }
    let norm = (2.0 / PI).sqrt();
    let n = traj.n_modes();
    let basis: Vec<Vec<f64>> =
        z_points.iter().map(|&z| (1..=n).map(|k| norm * sin_pi(k as f64 * z / PI)).collect()).collect();
    let times: Vec<f64> = (0..traj.len()).map(|i| traj.time(i)).collect();
    let values = (0..traj.len())
        .map(|i| {
            let x = traj.row(i);
            basis.iter().map(|e| e.iter().zip(x).map(|(e, c)| e * c).sum()).collect()
        })
        .collect();
    Ok(PhysicalField {
        times,
        z: z_points.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_mild;

    #[test]
    fn sine_projects_to_first_mode() {
        for n in [1, 4, 32] {
            let basis = SineBasis::new(n);
            let c = Profile::Sine { k: 1, amplitude: 1.0 }.coefficients(&basis).unwrap();
            assert!((c[0] - (PI / 2.0).sqrt()).abs() < 1e-14);
            assert!(c[1..].iter().all(|v| v.abs() < 1e-14));
        }
    }

    #[test]
    fn polynomial_projection_matches_closed_form() {
        // ⟨z(π-z), e_n⟩ = √(2/π) · 4/n³ for odd n, 0 for even n; Simpson's
        // relative error grows like (nπ/4N)⁴, so only the lower half is checked
        let basis = SineBasis::new(16);
        let c = Profile::Polynomial { amplitude: 1.0, skew: 0.0 }.coefficients(&basis).unwrap();
        for (i, v) in c.iter().enumerate().take(8) {
            let n = (i + 1) as f64;
            let want = if (i + 1) % 2 == 1 { (2.0 / PI).sqrt() * 4.0 / n.powi(3) } else { 0.0 };
            assert!((v - want).abs() < 5e-4 * want.abs().max(1e-3), "n={n}: {v} vs {want}");
        }
    }

    #[test]
    fn hypothesis_examples() {
        let ok = HeatConfig {
            alpha: 0.75,
            integrability_exponent: 3.0,
            ..HeatConfig::default()
        };
        let r = validate_hypotheses(&ok).unwrap();
        assert!(r.h1_exponent_ok && (r.p_min - 2.0).abs() < 1e-12);
        assert!(r.holder_bound.is_finite());

        let bad = HeatConfig {
            alpha: 0.6,
            integrability_exponent: 2.0,
            ..HeatConfig::default()
        };
        let r = validate_hypotheses(&bad).unwrap();
        assert!(!r.h1_exponent_ok && (r.p_min - 5.0).abs() < 1e-12);
        assert!(r.violations.iter().any(|v| v.starts_with("h1")));
        assert!(matches!(build_problem(&bad), Err(Error::Hypothesis { name: "h1", .. })));
    }

    #[test]
    fn lipschitz_probe_finds_k_squared() {
        for drift in [DriftChoice::ScaledIdentity { k: 0.5 }, DriftChoice::BoundedSigmoid { k: 0.5 }] {
            let cfg = HeatConfig {
                drift,
                n_modes: 4,
                ..HeatConfig::default()
            };
            let r = validate_hypotheses(&cfg).unwrap();
            assert!(r.f2_ok, "{drift:?}: {}", r.lipschitz_estimate);
            assert!(r.lipschitz_estimate > 0.2 && r.lipschitz_estimate <= 0.25 * (1.0 + 1e-9), "{drift:?}: {}", r.lipschitz_estimate);
        }
    }

    #[test]
    fn boundary_values_vanish() {
        let cfg = HeatConfig {
            n_modes: 5,
            ..HeatConfig::default()
        };
        let p = build_problem(&cfg).unwrap();
        let traj = solve_mild(&p, p.grid(16).unwrap(), 3).unwrap();
        let field = to_physical(&traj, &[0.0, PI / 2.0, PI]).unwrap();
        for row in &field.values {
            assert_eq!(row[0], 0.0);
            assert_eq!(row[2], 0.0);
        }
        assert!(to_physical(&traj, &[-0.1]).is_err());
        assert!(to_physical(&traj, &[PI + 1e-9]).is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = HeatConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: HeatConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }
}
