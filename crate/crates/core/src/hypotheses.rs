//! Numerical checks of the standing hypotheses on drift and noise data:
//! the integrated Lipschitz bound, square integrability of `f(·, 0)` and
//! `∫_0^b ‖h(s)‖_{L_2^0}^{2p} ds < ∞` with `p > 1/(2α - 1)`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::stream;
use crate::solver::{Drift, NoiseCoefficient, SegmentView};

/// Number of random pairs in the Lipschitz probe.
pub const LIPSCHITZ_PROBE_PAIRS: usize = 200;

/// Midpoint cells for the time integrals.
const TIME_CELLS: usize = 4096;

/// Problem data the checks need. `p` is not validated here.
pub struct HypothesisInputs<'a> {
    pub alpha: f64,
    pub p: f64,
    pub horizon: f64,
    pub delay: f64,
    /// `λ_n` of the noise covariance.
    pub eigenvalues: &'a [f64],
    pub noise: &'a dyn NoiseCoefficient,
    pub drift: &'a dyn Drift,
    /// The `C_f` the caller claims.
    pub lipschitz_hint: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// Chosen `p` and the threshold `1/(2α-1)` it must exceed.
    pub p: f64,
    pub p_min: f64,
    pub h1_exponent_ok: bool,
    /// `∫_0^b ‖h(s)‖_{L_2^0}^{2p} ds`.
    pub noise_integral: f64,
    /// Largest ratio `∫_0^b ‖f(x_s) - f(y_s)‖² / ∫_{-r}^b ‖x - y‖²` over the probe.
    pub lipschitz_estimate: f64,
    pub lipschitz_hint: f64,
    pub f2_ok: bool,
    /// `∫_0^b ‖f(s, 0)‖² ds`.
    pub f3_integral: f64,
    /// `b^{((2α-1)p-1)/p} (∫_0^b ‖h‖^{2p})^{1/p}`; infinite when the exponent check fails.
    pub holder_bound: f64,
    pub violations: Vec<String>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// The noise condition, which forbids solving when it fails.
    pub fn hard_violation(&self) -> Option<Error> {
        if !self.h1_exponent_ok || !self.noise_integral.is_finite() {
            return Some(Error::Hypothesis {
                name: "h1",
                detail: format!(
                    "p = {} must exceed 1/(2 alpha - 1) = {} with finite noise integral (got {})",
                    self.p, self.p_min, self.noise_integral
                ),
            });
        }
        None
    }
}

pub fn assess(inputs: &HypothesisInputs<'_>) -> Result<HypothesisReport> {
    let HypothesisInputs {
        alpha,
        p,
        horizon: b,
        delay,
        eigenvalues: lambda,
        noise,
        drift,
        lipschitz_hint: hint,
    } = *inputs;
    if !(alpha > 0.5 && alpha <= 1.0) {
        return Err(Error::domain(format!("alpha = {alpha} must lie in (1/2, 1]")));
    }
    if !(b > 0.0 && delay > 0.0) {
        return Err(Error::invalid(format!("horizon {b} and delay {delay} must be positive")));
    }
    let n = lambda.len();
    let p_min = 1.0 / (2.0 * alpha - 1.0);
    let mut violations = Vec::new();

    let h1_exponent_ok = p > p_min;
    if !h1_exponent_ok {
        violations.push(format!("h1: p = {p} <= 1/(2 alpha - 1) = {p_min}"));
    }

    let ds = b / TIME_CELLS as f64;
    let mut h = vec![0.0; n];
    let mut f = vec![0.0; n];
    let zeros = vec![0.0; 2 * n];
    let (mut noise_integral, mut f3_integral) = (0.0, 0.0);
    for i in 0..TIME_CELLS {
        let s = (i as f64 + 0.5) * ds;
        noise.eval(s, &mut h);
        let hs2: f64 = h.iter().zip(lambda).map(|(g, l)| l * g * g).sum();
        noise_integral += hs2.powf(p) * ds;
        drift.eval(s, SegmentView::from_slice(&zeros, n, s, delay), &mut f);
        f3_integral += f.iter().map(|v| v * v).sum::<f64>() * ds;
    }
    if !noise_integral.is_finite() {
        violations.push(format!("h1: noise integral is not finite ({noise_integral})"));
    }
    if !f3_integral.is_finite() {
        violations.push(format!("f3: integral of |f(s, 0)|^2 is not finite ({f3_integral})"));
    }
    let holder_bound = if h1_exponent_ok {
        b.powf(((2.0 * alpha - 1.0) * p - 1.0) / p) * noise_integral.powf(1.0 / p)
    } else {
        f64::INFINITY
    };

    let lipschitz_estimate = lipschitz_probe(drift, n, b, delay)?;
    let f2_ok = lipschitz_estimate <= hint * (1.0 + 1e-9);
    if !f2_ok {
        violations.push(format!("f2: probed ratio {lipschitz_estimate} exceeds C_f = {hint}"));
    }

    Ok(HypothesisReport {
        p,
        p_min,
        h1_exponent_ok,
        noise_integral,
        lipschitz_estimate,
        lipschitz_hint: hint,
        f2_ok,
        f3_integral,
        holder_bound,
        violations,
    })
}

/// Monte Carlo estimate of the integrated Lipschitz constant on a
/// 64-steps-per-delay grid. Each pair differs on a random window of
/// `[-r, b]` so that delayed and instantaneous dependence are both exposed.
pub fn lipschitz_probe(drift: &dyn Drift, n_modes: usize, horizon: f64, delay: f64) -> Result<f64> {
    if drift.is_zero() {
        return Ok(0.0);
    }
    let m = 64usize;
    let dt = delay / m as f64;
    let steps = (horizon / dt).ceil() as usize;
    let rows = m + steps + 1;
    let mut rng = stream(0x005e_edf2);
    let mut worst: f64 = 0.0;
    let mut fx = vec![0.0; n_modes];
    let mut fy = vec![0.0; n_modes];
    for pair in 0..LIPSCHITZ_PROBE_PAIRS {
        let scale = 10f64.powf(rng.random_range(-3.0..1.0));
        let x: Vec<f64> = (0..rows * n_modes).map(|_| scale * rng.sample::<f64, _>(StandardNormal)).collect();
        let a = rng.random_range(0..rows);
        let w = if pair % 2 == 0 { rng.random_range(1..=rows - a) } else { rows - a };
        let eps = 10f64.powf(rng.random_range(-4.0..0.0)) * scale.max(1e-3);
        let mut y = x.clone();
        for v in &mut y[a * n_modes..(a + w) * n_modes] {
            *v += eps * rng.sample::<f64, _>(StandardNormal);
        }
        let mut num = 0.0;
        for j in 0..steps {
            let t = j as f64 * dt;
            let window = j * n_modes..(j + m + 1) * n_modes;
            drift.eval(t, SegmentView::from_slice(&x[window.clone()], n_modes, t, dt), &mut fx);
            drift.eval(t, SegmentView::from_slice(&y[window], n_modes, t, dt), &mut fy);
            num += fx.iter().zip(&fy).map(|(p, q)| (p - q).powi(2)).sum::<f64>() * dt;
        }
        let den: f64 = x.iter().zip(&y).map(|(p, q)| (p - q).powi(2)).sum::<f64>() * dt;
        if den > 0.0 {
            worst = worst.max(num / den);
        }
    }
    if !worst.is_finite() {
        return Err(Error::Convergence("Lipschitz probe produced a non-finite ratio".into()));
    }
    Ok(worst)
}
