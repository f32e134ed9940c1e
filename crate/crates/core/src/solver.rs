//! Mild solutions of
//!
//! ```text
//! ᶜD^α x(t) = A x(t) + f(t, x_t) + h(t) dB^H_Q/dt,   x = φ on [-r, 0],
//! ```
//!
//! on a uniform grid with `dt` dividing both the delay `r` and the horizon
//! `b`. The solution satisfies
//!
//! ```text
//! x(t) = T_α(t)φ(0) + ∫_0^t (t-s)^{α-1} S_α(t-s) f(s, x_s) ds
//!                   + ∫_0^t (t-s)^{α-1} S_α(t-s) h(s) dB^H(s)
//! ```
//!
//! and is computed by Picard iteration. Both convolutions use product
//! integration: on `[t_j, t_{j+1}]` the factor `(t_k - s)^{α-1}` is integrated
//! exactly, `S_α(t_k - s)` is sampled at the cell midpoint and the integrand
//! at `t_j`.

use std::io::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::export::{csv_writer, sig17};
use crate::fbm::{GeneratorKind, HurstParameter, QFbmPath, QFbmSampler, TimeGrid};
use crate::operators::{check_alpha, s_alpha_multiplier, t_alpha_multiplier, ModeVector, SpectralOperator};
use crate::specfun::{gamma, mittag_leffler, MlParams};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 64;

/// Read-only window `x(t - r), ..., x(t)` of a state path at grid resolution.
#[derive(Debug, Clone, Copy)]
pub struct SegmentView<'a> {
    data: &'a [f64],
    n_modes: usize,
    anchor: f64,
    dt: f64,
}

impl<'a> SegmentView<'a> {
    /// Row-major samples `x(t - r), ..., x(t)` ending at `anchor = t`.
    pub fn from_slice(data: &'a [f64], n_modes: usize, anchor: f64, dt: f64) -> Self {
        assert!(n_modes > 0 && !data.is_empty() && data.len().is_multiple_of(n_modes), "segment shape mismatch");
        Self {
            data,
            n_modes,
            anchor,
            dt,
        }
    }

    /// Number of samples, `m + 1` for `r = m·dt`.
    pub fn len(&self) -> usize {
        self.data.len() / self.n_modes
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// `x(t - r + i·dt)`.
    pub fn row(&self, i: usize) -> &'a [f64] {
        &self.data[i * self.n_modes..(i + 1) * self.n_modes]
    }

    /// `x(t - j·dt)`.
    pub fn lag(&self, j: usize) -> &'a [f64] {
        self.row(self.len() - 1 - j)
    }

    pub fn current(&self) -> &'a [f64] {
        self.lag(0)
    }

    /// `x(t - r)`.
    pub fn delayed(&self) -> &'a [f64] {
        self.row(0)
    }
}

/// Owned delay segment `x_t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelaySegment {
    anchor: f64,
    dt: f64,
    n_modes: usize,
    samples: Vec<f64>,
}

impl DelaySegment {
    pub fn view(&self) -> SegmentView<'_> {
        SegmentView {
            data: &self.samples,
            n_modes: self.n_modes,
            anchor: self.anchor,
            dt: self.dt,
        }
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn len(&self) -> usize {
        self.samples.len() / self.n_modes
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.samples[i * self.n_modes..(i + 1) * self.n_modes]
    }
}

/// Drift `f(t, x_t)` in mode coordinates.
pub trait Drift: Send + Sync {
    fn eval(&self, t: f64, segment: SegmentView<'_>, out: &mut [f64]);

    /// `true` if `f ≡ 0`; Picard iteration then stops after one step.
    fn is_zero(&self) -> bool {
        false
    }
}

/// Diagonal noise coefficient: `h(t) e_n = h_n(t) e_n`.
pub trait NoiseCoefficient: Send + Sync {
    fn eval(&self, t: f64, out: &mut [f64]);

    fn is_zero(&self) -> bool {
        false
    }
}

/// Initial history `φ(t)`, `t ∈ [-r, 0]`.
pub trait History: Send + Sync {
    fn eval(&self, t: f64, out: &mut [f64]);
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroDrift;

impl Drift for ZeroDrift {
    fn eval(&self, _t: f64, _segment: SegmentView<'_>, out: &mut [f64]) {
        out.fill(0.0);
    }

    fn is_zero(&self) -> bool {
        true
    }
}

/// `f(t, x_t) = k·x(t - r)`.
#[derive(Debug, Clone, Copy)]
pub struct LinearDelayDrift {
    pub k: f64,
}

impl Drift for LinearDelayDrift {
    fn eval(&self, _t: f64, segment: SegmentView<'_>, out: &mut [f64]) {
        for (o, x) in out.iter_mut().zip(segment.delayed()) {
            *o = self.k * x;
        }
    }
}

/// Time-dependent forcing that ignores the state.
pub struct Forcing<F>(pub F);

impl<F: Fn(f64, &mut [f64]) + Send + Sync> Drift for Forcing<F> {
    fn eval(&self, t: f64, _segment: SegmentView<'_>, out: &mut [f64]) {
        (self.0)(t, out)
    }
}

/// Arbitrary drift from a closure.
pub struct FnDrift<F>(pub F);

impl<F: Fn(f64, SegmentView<'_>, &mut [f64]) + Send + Sync> Drift for FnDrift<F> {
    fn eval(&self, t: f64, segment: SegmentView<'_>, out: &mut [f64]) {
        (self.0)(t, segment, out)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroNoise;

impl NoiseCoefficient for ZeroNoise {
    fn eval(&self, _t: f64, out: &mut [f64]) {
        out.fill(0.0);
    }

    fn is_zero(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantNoise(pub Vec<f64>);

impl NoiseCoefficient for ConstantNoise {
    fn eval(&self, _t: f64, out: &mut [f64]) {
        out.copy_from_slice(&self.0);
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|v| *v == 0.0)
    }
}

pub struct FnNoise<F>(pub F);

impl<F: Fn(f64, &mut [f64]) + Send + Sync> NoiseCoefficient for FnNoise<F> {
    fn eval(&self, t: f64, out: &mut [f64]) {
        (self.0)(t, out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantHistory(pub Vec<f64>);

impl History for ConstantHistory {
    fn eval(&self, _t: f64, out: &mut [f64]) {
        out.copy_from_slice(&self.0);
    }
}

pub struct FnHistory<F>(pub F);

impl<F: Fn(f64, &mut [f64]) + Send + Sync> History for FnHistory<F> {
    fn eval(&self, t: f64, out: &mut [f64]) {
        (self.0)(t, out)
    }
}

/// First Picard iterate on `(0, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialIterate {
    /// `x⁰ = 0`.
    #[default]
    Zero,
    /// `x⁰ = φ(0)`.
    HoldInitial,
}

/// The equation data. Build with [`Problem::builder`].
#[derive(Clone)]
pub struct Problem {
    alpha: f64,
    hurst: HurstParameter,
    operator: SpectralOperator,
    horizon: f64,
    delay: f64,
    initial: Arc<dyn History>,
    drift: Arc<dyn Drift>,
    noise: Arc<dyn NoiseCoefficient>,
    eigenvalues: Vec<f64>,
    lipschitz_hint: f64,
    integrability_exponent: f64,
}

impl std::fmt::Debug for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Problem")
            .field("alpha", &self.alpha)
            .field("hurst", &self.hurst)
            .field("operator", &self.operator)
            .field("horizon", &self.horizon)
            .field("delay", &self.delay)
            .field("eigenvalues", &self.eigenvalues)
            .field("lipschitz_hint", &self.lipschitz_hint)
            .field("integrability_exponent", &self.integrability_exponent)
            .finish_non_exhaustive()
    }
}

pub struct ProblemBuilder {
    problem: Problem,
}

impl ProblemBuilder {
    pub fn initial(mut self, h: impl History + 'static) -> Self {
        self.problem.initial = Arc::new(h);
        self
    }

    pub fn drift(mut self, f: impl Drift + 'static) -> Self {
        self.problem.drift = Arc::new(f);
        self
    }

    pub fn shared_drift(mut self, f: Arc<dyn Drift>) -> Self {
        self.problem.drift = f;
        self
    }

    pub fn noise(mut self, h: impl NoiseCoefficient + 'static) -> Self {
        self.problem.noise = Arc::new(h);
        self
    }

    /// Covariance eigenvalues `λ_n` of `Q`, one per mode.
    pub fn eigenvalues(mut self, lambda: Vec<f64>) -> Self {
        self.problem.eigenvalues = lambda;
        self
    }

    /// `C_f` in the integrated Lipschitz condition on `f`.
    pub fn lipschitz_hint(mut self, c_f: f64) -> Self {
        self.problem.lipschitz_hint = c_f;
        self
    }

    /// Exponent `p` with `∫_0^b ‖h‖^{2p} < ∞`; must exceed `1/(2α-1)`.
    pub fn integrability_exponent(mut self, p: f64) -> Self {
        self.problem.integrability_exponent = p;
        self
    }

    pub fn build(self) -> Result<Problem> {
        self.problem.validate()?;
        Ok(self.problem)
    }
}

impl Problem {
    /// Zero data, `λ_n = n^{-2}`, `C_f = 0` and `p = 1/(2α-1) + 1`.
    pub fn builder(alpha: f64, hurst: HurstParameter, operator: SpectralOperator, horizon: f64, delay: f64) -> ProblemBuilder {
        let n = operator.n_modes();
        let p = if alpha > 0.5 { 1.0 / (2.0 * alpha - 1.0) + 1.0 } else { f64::NAN };
        ProblemBuilder {
            problem: Problem {
                alpha,
                hurst,
                operator,
                horizon,
                delay,
                initial: Arc::new(ConstantHistory(vec![0.0; n])),
                drift: Arc::new(ZeroDrift),
                noise: Arc::new(ZeroNoise),
                eigenvalues: (1..=n).map(|k| 1.0 / (k * k) as f64).collect(),
                lipschitz_hint: 0.0,
                integrability_exponent: p,
            },
        }
    }

    fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::invalid(format!("horizon {} must be positive", self.horizon)));
        }
        if !(self.delay > 0.0 && self.delay.is_finite()) {
            return Err(Error::invalid(format!("delay {} must be positive", self.delay)));
        }
        let n = self.operator.n_modes();
        if self.eigenvalues.len() != n {
            return Err(Error::invalid(format!("{} noise eigenvalues for {n} modes", self.eigenvalues.len())));
        }
        if let Some(l) = self.eigenvalues.iter().find(|l| !(**l >= 0.0 && l.is_finite())) {
            return Err(Error::invalid(format!("noise eigenvalue {l} must be finite and >= 0")));
        }
        if !(self.lipschitz_hint >= 0.0 && self.lipschitz_hint.is_finite()) {
            return Err(Error::invalid(format!("Lipschitz constant {} must be >= 0", self.lipschitz_hint)));
        }
        let p_min = 1.0 / (2.0 * self.alpha - 1.0);
        if !(self.integrability_exponent > p_min) {
            return Err(Error::Hypothesis {
                name: "h1",
                detail: format!(
                    "integrability exponent p = {} must exceed 1/(2 alpha - 1) = {p_min}",
                    self.integrability_exponent
                ),
            });
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn hurst(&self) -> HurstParameter {
        self.hurst
    }

    pub fn operator(&self) -> &SpectralOperator {
        &self.operator
    }

    pub fn n_modes(&self) -> usize {
        self.operator.n_modes()
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn delay(&self) -> f64 {
        self.delay
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn lipschitz_hint(&self) -> f64 {
        self.lipschitz_hint
    }

    pub fn integrability_exponent(&self) -> f64 {
        self.integrability_exponent
    }

    pub fn drift(&self) -> &dyn Drift {
        self.drift.as_ref()
    }

    pub fn noise(&self) -> &dyn NoiseCoefficient {
        self.noise.as_ref()
    }

    pub fn history(&self) -> &dyn History {
        self.initial.as_ref()
    }

    /// Grid on `[0, b]` with step `b / n_steps`; fails unless the delay is a
    /// whole number of steps.
    pub fn grid(&self, n_steps: usize) -> Result<TimeGrid> {
        let g = TimeGrid::from_horizon(self.horizon, n_steps)?;
        self.delay_steps(&g)?;
        Ok(g)
    }

    /// `m` with `r = m·dt`.
    pub fn delay_steps(&self, grid: &TimeGrid) -> Result<usize> {
        if (grid.horizon() - self.horizon).abs() > 1e-12 * self.horizon {
            return Err(Error::GridMismatch(format!(
                "grid horizon {} differs from problem horizon {}",
                grid.horizon(),
                self.horizon
            )));
        }
        let ratio = self.delay / grid.dt();
        let m = ratio.round();
        if m < 1.0 || (ratio - m).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::GridMismatch(format!(
                "delay {} is not a positive multiple of dt = {}",
                self.delay,
                grid.dt()
            )));
        }
        Ok(m as usize)
    }

    /// `φ` sampled on `-r, -r + dt, ..., 0`.
    pub fn initial_segment(&self, grid: &TimeGrid) -> Result<DelaySegment> {
        let m = self.delay_steps(grid)?;
        let n = self.n_modes();
        let mut samples = vec![0.0; (m + 1) * n];
        for i in 0..=m {
            let t = (i as f64 - m as f64) * grid.dt();
            self.initial.eval(t, &mut samples[i * n..(i + 1) * n]);
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("initial history sample {i} is not finite")));
        }
        Ok(DelaySegment {
            anchor: 0.0,
            dt: grid.dt(),
            n_modes: n,
            samples,
        })
    }
}

/// Per-run metadata of a trajectory.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub iterations: usize,
    pub sup_differences: Vec<f64>,
    pub seed: Option<u64>,
}

/// Mode coefficients on `-r, ..., 0, dt, ..., b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    grid: TimeGrid,
    delay_steps: usize,
    n_modes: usize,
    data: Vec<f64>,
    diagnostics: Diagnostics,
}

impl Trajectory {
    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn delay_steps(&self) -> usize {
        self.delay_steps
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.diagnostics
    }

    /// Number of stored time points, `m + n_steps + 1`.
    pub fn len(&self) -> usize {
        self.data.len() / self.n_modes
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Time of stored row `i` (row `m` is `t = 0`).
    pub fn time(&self, i: usize) -> f64 {
        (i as f64 - self.delay_steps as f64) * self.grid.dt()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_modes..(i + 1) * self.n_modes]
    }

    /// State at grid point `t_k = k·dt`, `0 ≤ k ≤ n_steps`.
    pub fn at_step(&self, k: usize) -> &[f64] {
        self.row(k + self.delay_steps)
    }

    /// Mode `n` over all stored times.
    pub fn mode(&self, n: usize) -> Vec<f64> {
        (0..self.len()).map(|i| self.row(i)[n]).collect()
    }

    /// Largest Euclidean distance between the states of two trajectories on
    /// the same grid.
    pub fn sup_distance(&self, other: &Trajectory) -> Result<f64> {
        if self.grid != other.grid || self.delay_steps != other.delay_steps || self.n_modes != other.n_modes {
            return Err(Error::GridMismatch("trajectories live on different grids".into()));
        }
        Ok(sup_distance(&self.data, &other.data, self.n_modes))
    }

    /// CSV with columns `t,mode_1,...,mode_N`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv_writer(w);
        let mut header = vec!["t".to_string()];
        header.extend((1..=self.n_modes).map(|n| format!("mode_{n}")));
        out.write_record(&header)?;
        for i in 0..self.len() {
            let mut rec = vec![sig17(self.time(i))];
            rec.extend(self.row(i).iter().map(|v| sig17(*v)));
            out.write_record(&rec)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// `x_t` for a grid point `t ∈ [0, b]`.
pub fn segment_extract(traj: &Trajectory, t: f64) -> Result<DelaySegment> {
    let k = traj
        .grid
        .index_of(t)
        .ok_or_else(|| Error::GridMismatch(format!("segment anchor {t} is not a grid point of [0, b]")))?;
    let n = traj.n_modes;
    Ok(DelaySegment {
        anchor: traj.grid.point(k),
        dt: traj.grid.dt(),
        n_modes: n,
        samples: traj.data[k * n..(k + traj.delay_steps + 1) * n].to_vec(),
    })
}

fn sup_distance(a: &[f64], b: &[f64], n_modes: usize) -> f64 {
    a.chunks(n_modes)
        .zip(b.chunks(n_modes))
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

/// Riemann–Liouville integral `J^β f(t_k) = Σ_{j<k} f(t_j) ∫_{t_j}^{t_{j+1}} (t_k-s)^{β-1}/Γ(β) ds`.
/// Exact for constants.
pub fn rl_integral(order: f64, samples: &[f64], dt: f64) -> Result<Vec<f64>> {
    if !(order > 0.0 && order.is_finite()) {
        return Err(Error::domain(format!("Riemann-Liouville order {order} must be positive")));
    }
    if !(dt > 0.0) {
        return Err(Error::invalid(format!("step {dt} must be positive")));
    }
    let n = samples.len();
    let scale = dt.powf(order) / gamma(order + 1.0)?;
    let w: Vec<f64> = (0..n).map(|l| scale * ((l + 1) as f64).powf(order) - scale * (l as f64).powf(order)).collect();
    let mut out = vec![0.0; n];
    for k in 1..n {
        out[k] = (0..k).map(|j| w[k - 1 - j] * samples[j]).sum();
    }
    Ok(out)
}

/// Lower-triangular Toeplitz weights of the singular convolution, one row of
/// `n_steps` lags per mode: `G_n(l) = w_l E_{α,α}(-μ_n ((l+½)dt)^α)` with
/// `w_l = dt^α ((l+1)^α - l^α)/α`.
#[derive(Debug, Clone)]
pub struct ConvolutionKernel {
    alpha: f64,
    n_steps: usize,
    weights: Vec<Vec<f64>>,
}

impl ConvolutionKernel {
    pub fn new(alpha: f64, a: &SpectralOperator, grid: &TimeGrid) -> Result<Self> {
        check_alpha(alpha)?;
        let n = grid.n_steps();
        let dt = grid.dt();
        let scale = dt.powf(alpha) / alpha;
        let w: Vec<f64> = (0..n).map(|l| scale * (((l + 1) as f64).powf(alpha) - (l as f64).powf(alpha))).collect();
        let weights = a
            .eigenvalues()
            .iter()
            .map(|&mu| {
                (0..n)
                    .map(|l| Ok(w[l] * s_alpha_multiplier(alpha, mu, (l as f64 + 0.5) * dt)?))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { alpha, n_steps: n, weights })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn weight(&self, mode: usize, lag: usize) -> f64 {
        self.weights[mode][lag]
    }

    /// `out[k][n] = Σ_{j<k} G_n(k-1-j) input[j][n]` for `k = 0..=n_steps`.
    /// `input` is row-major with at least `n_steps` rows of `n_modes`.
    fn apply(&self, input: &[f64], out: &mut [f64]) {
        let modes = self.weights.len();
        let n = self.n_steps;
        out[..modes].fill(0.0);
        let mut column = vec![0.0; n];
        for (m, g) in self.weights.iter().enumerate() {
            for (j, c) in column.iter_mut().enumerate() {
                *c = input[j * modes + m];
            }
            for k in 1..=n {
                let mut acc = 0.0;
                for (j, c) in column[..k].iter().enumerate() {
                    acc += g[k - 1 - j] * c;
                }
                out[k * modes + m] = acc;
            }
        }
    }
}

fn to_rows(v: &[ModeVector], rows: usize, modes: usize) -> Result<Vec<f64>> {
    if v.len() < rows {
        return Err(Error::invalid(format!("{} samples, need {rows}", v.len())));
    }
    let mut flat = Vec::with_capacity(rows * modes);
    for x in &v[..rows] {
        if x.len() != modes {
            return Err(Error::invalid(format!("sample has {} modes, expected {modes}", x.len())));
        }
        flat.extend_from_slice(x);
    }
    Ok(flat)
}

fn from_rows(flat: &[f64], modes: usize) -> Vec<ModeVector> {
    flat.chunks(modes).map(|c| ModeVector::new(c.to_vec()).unwrap_or_else(|_| ModeVector::zeros(modes))).collect()
}

/// `∫_0^{t_k} (t_k-s)^{α-1} S_α(t_k-s) f(s) ds` for `k = 0..=n_steps`, from
/// samples `f(t_j)`, `j < n_steps`.
pub fn det_convolution(alpha: f64, a: &SpectralOperator, f: &[ModeVector], grid: &TimeGrid) -> Result<Vec<ModeVector>> {
    let kernel = ConvolutionKernel::new(alpha, a, grid)?;
    let modes = a.n_modes();
    let input = to_rows(f, grid.n_steps(), modes)?;
    let mut out = vec![0.0; grid.len() * modes];
    kernel.apply(&input, &mut out);
    Ok(from_rows(&out, modes))
}

/// `∫_0^{t_k} (t_k-s)^{α-1} S_α(t_k-s) h(s) dB^H(s)` for `k = 0..=n_steps`,
/// from per-step coefficients `h(t_j)`.
pub fn stoch_convolution(
    alpha: f64,
    a: &SpectralOperator,
    h: &[ModeVector],
    noise: &QFbmPath,
    grid: &TimeGrid,
) -> Result<Vec<ModeVector>> {
    if noise.grid() != *grid {
        return Err(Error::GridMismatch("noise path and solver grid differ".into()));
    }
    let modes = a.n_modes();
    if noise.n_modes() != modes {
        return Err(Error::invalid(format!("noise has {} modes, operator {modes}", noise.n_modes())));
    }
    let kernel = ConvolutionKernel::new(alpha, a, grid)?;
    let hs = to_rows(h, grid.n_steps(), modes)?;
    let input = noise_input(&hs, noise, grid);
    let mut out = vec![0.0; grid.len() * modes];
    kernel.apply(&input, &mut out);
    Ok(from_rows(&out, modes))
}

/// `h_n(t_j) ΔB_n(t_j) / dt`, row-major.
fn noise_input(h: &[f64], noise: &QFbmPath, grid: &TimeGrid) -> Vec<f64> {
    let modes = noise.n_modes();
    let inv_dt = 1.0 / grid.dt();
    let mut input = vec![0.0; grid.n_steps() * modes];
    for m in 0..modes {
        let b = noise.mode(m);
        for j in 0..grid.n_steps() {
            input[j * modes + m] = h[j * modes + m] * (b[j + 1] - b[j]) * inv_dt;
        }
    }
    input
}

/// `K = M² E_{α,α}(ω b^α)² C_f b^{2α} / (2α-1)`, the rate in the factorial
/// bound `z_n ≤ K^{n-1}/(n-1)! z_1` on squared sup-differences of Picard
/// iterates.
pub fn picard_envelope(problem: &Problem) -> Result<f64> {
    let a = problem.alpha;
    let g = problem.operator.growth();
    let e = mittag_leffler(MlParams::diagonal(a)?, g.omega * problem.horizon.powf(a))?;
    Ok(g.m * g.m * e * e * problem.lipschitz_hint * problem.horizon.powf(2.0 * a) / (2.0 * a - 1.0))
}

/// Precomputed, seed-independent state for solving one problem on one grid.
pub struct MildSolver {
    problem: Problem,
    grid: TimeGrid,
    delay_steps: usize,
    kernel: ConvolutionKernel,
    /// `E_α(-μ_n t_k^α)`, row-major over `k`.
    relaxation: Vec<f64>,
    /// `h(t_j)`, row-major over `j < n_steps`.
    noise_coeff: Vec<f64>,
    initial: DelaySegment,
    noise: Option<QFbmSampler>,
    tolerance: f64,
    max_iter: usize,
    start: InitialIterate,
}

impl MildSolver {
    /// Circulant noise, tolerance [`DEFAULT_TOLERANCE`], [`DEFAULT_MAX_ITER`] iterations.
    pub fn new(problem: &Problem, grid: TimeGrid) -> Result<Self> {
        Self::with_generator(problem, grid, GeneratorKind::Circulant)
    }

    pub fn with_generator(problem: &Problem, grid: TimeGrid, generator: GeneratorKind) -> Result<Self> {
        problem.validate()?;
        let delay_steps = problem.delay_steps(&grid)?;
        let modes = problem.n_modes();
        let alpha = problem.alpha;
        let kernel = ConvolutionKernel::new(alpha, &problem.operator, &grid)?;
        let mut relaxation = vec![0.0; grid.len() * modes];
        for k in 0..grid.len() {
            for (m, &mu) in problem.operator.eigenvalues().iter().enumerate() {
                relaxation[k * modes + m] = t_alpha_multiplier(alpha, mu, grid.point(k))?;
            }
        }
        let mut noise_coeff = vec![0.0; grid.n_steps() * modes];
        if !problem.noise.is_zero() {
            for j in 0..grid.n_steps() {
                problem.noise.eval(grid.point(j), &mut noise_coeff[j * modes..(j + 1) * modes]);
            }
            if let Some(j) = noise_coeff.iter().position(|v| !v.is_finite()) {
                return Err(Error::invalid(format!("noise coefficient sample {j} is not finite")));
            }
        }
        let noise = if problem.noise.is_zero() {
            None
        } else {
            Some(QFbmSampler::new(generator, problem.hurst, grid, problem.eigenvalues.clone())?)
        };
        let initial = problem.initial_segment(&grid)?;
        Ok(Self {
            problem: problem.clone(),
            grid,
            delay_steps,
            kernel,
            relaxation,
            noise_coeff,
            initial,
            noise,
            tolerance: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
            start: InitialIterate::Zero,
        })
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn max_iter(mut self, n: usize) -> Self {
        self.max_iter = n;
        self
    }

    pub fn initial_iterate(mut self, start: InitialIterate) -> Self {
        self.start = start;
        self
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn kernel(&self) -> &ConvolutionKernel {
        &self.kernel
    }

    /// Noise path for `seed`; `None` when `h ≡ 0`.
    pub fn noise_path(&self, seed: u64) -> Option<QFbmPath> {
        self.noise.as_ref().map(|s| s.generate(seed))
    }

    /// Stochastic convolution on `0..=n_steps`, row-major.
    pub fn stochastic_term(&self, noise: &QFbmPath) -> Result<Vec<f64>> {
        if noise.grid() != self.grid || noise.n_modes() != self.problem.n_modes() {
            return Err(Error::GridMismatch("noise path does not match the solver grid".into()));
        }
        let modes = self.problem.n_modes();
        let input = noise_input(&self.noise_coeff, noise, &self.grid);
        let mut out = vec![0.0; self.grid.len() * modes];
        self.kernel.apply(&input, &mut out);
        Ok(out)
    }

    /// Full mild solution driven by the Q-fBm of `seed`.
    pub fn solve(&self, seed: u64) -> Result<Trajectory> {
        let noise = self.noise_path(seed);
        let mut traj = self.picard(noise.as_ref())?;
        traj.diagnostics.seed = Some(seed);
        Ok(traj)
    }

    /// Picard iteration for a fixed noise path (`None` for `h ≡ 0`).
    pub fn picard(&self, noise: Option<&QFbmPath>) -> Result<Trajectory> {
        let modes = self.problem.n_modes();
        let n = self.grid.n_steps();
        let m = self.delay_steps;
        let rows = m + n + 1;
        let phi0 = self.initial.row(m).to_vec();

        // T_α(t_k)φ(0) + stochastic convolution, for k = 0..=n
        let mut base = vec![0.0; (n + 1) * modes];
        for k in 0..=n {
            for j in 0..modes {
                base[k * modes + j] = self.relaxation[k * modes + j] * phi0[j];
            }
        }
        if let (Some(path), false) = (noise, self.problem.noise.is_zero()) {
            let z = self.stochastic_term(path)?;
            base.iter_mut().zip(&z).for_each(|(b, z)| *b += z);
        }

        let mut prev = vec![0.0; rows * modes];
        prev[..(m + 1) * modes].copy_from_slice(&self.initial.samples);
        if self.start == InitialIterate::HoldInitial {
            for k in (m + 1)..rows {
                prev[k * modes..(k + 1) * modes].copy_from_slice(&phi0);
            }
        }
        let mut next = prev.clone();
        let mut drift = vec![0.0; n * modes];
        let mut conv = vec![0.0; (n + 1) * modes];
        let drift_fn = self.problem.drift.as_ref();
        let zero_drift = drift_fn.is_zero();
        let mut sup_differences = Vec::new();

        for iter in 1..=self.max_iter.max(1) {
            if zero_drift {
                conv.fill(0.0);
            } else {
                for j in 0..n {
                    let seg = SegmentView {
                        data: &prev[j * modes..(j + m + 1) * modes],
                        n_modes: modes,
                        anchor: self.grid.point(j),
                        dt: self.grid.dt(),
                    };
                    drift_fn.eval(self.grid.point(j), seg, &mut drift[j * modes..(j + 1) * modes]);
                }
                if let Some(i) = drift.iter().position(|v| !v.is_finite()) {
                    return Err(Error::invalid(format!("drift value {i} is not finite in iteration {iter}")));
                }
                self.kernel.apply(&drift, &mut conv);
            }
            for k in 1..=n {
                for j in 0..modes {
                    next[(m + k) * modes + j] = base[k * modes + j] + conv[k * modes + j];
                }
            }
            let d = sup_distance(&next, &prev, modes);
            sup_differences.push(d);
            std::mem::swap(&mut prev, &mut next);
            if zero_drift || d <= self.tolerance {
                return Ok(Trajectory {
                    grid: self.grid,
                    delay_steps: m,
                    n_modes: modes,
                    data: prev,
                    diagnostics: Diagnostics {
                        iterations: iter,
                        sup_differences,
                        seed: None,
                    },
                });
            }
        }
        Err(Error::NonConvergence {
            iterations: self.max_iter,
            sup_differences,
        })
    }
}

/// Picard iteration for a given noise path with explicit stopping rule.
pub fn picard_solve(
    problem: &Problem,
    grid: TimeGrid,
    noise: Option<&QFbmPath>,
    tol: f64,
    max_iter: usize,
    start: InitialIterate,
) -> Result<Trajectory> {
    MildSolver::new(problem, grid)?.tolerance(tol).max_iter(max_iter).initial_iterate(start).picard(noise)
}

/// Mild solution with Q-fBm noise generated from `seed`.
pub fn solve_mild(problem: &Problem, grid: TimeGrid, seed: u64) -> Result<Trajectory> {
    MildSolver::new(problem, grid)?.solve(seed)
}

/// Classical (`α = 1`) mild solution by the exponential integrator
///
/// ```text
/// x_{k+1} = e^{-μ dt} x_k + (1 - e^{-μ dt})/μ · f(t_k, x_{t_k}) + e^{-μ dt/2} h(t_k) ΔB(t_k),
/// ```
///
/// stepping forward once through the grid. The fractional order of
/// `problem` is ignored.
pub fn classical_solve(problem: &Problem, grid: TimeGrid, noise: Option<&QFbmPath>) -> Result<Trajectory> {
    let m = problem.delay_steps(&grid)?;
    let modes = problem.n_modes();
    let n = grid.n_steps();
    let dt = grid.dt();
    let initial = problem.initial_segment(&grid)?;
    let mut data = vec![0.0; (m + n + 1) * modes];
    data[..(m + 1) * modes].copy_from_slice(&initial.samples);

    let mu = problem.operator.eigenvalues();
    let decay: Vec<f64> = mu.iter().map(|&u| (-u * dt).exp()).collect();
    let half: Vec<f64> = mu.iter().map(|&u| (-0.5 * u * dt).exp()).collect();
    let phi1: Vec<f64> = mu.iter().map(|&u| if u == 0.0 { dt } else { -(-u * dt).exp_m1() / u }).collect();
    let increments: Option<Vec<Vec<f64>>> = noise.map(|q| (0..q.n_modes()).map(|j| q.increments(j)).collect());
    if let Some(q) = noise {
        if q.grid() != grid || q.n_modes() != modes {
            return Err(Error::GridMismatch("noise path does not match the grid".into()));
        }
    }
    let mut f = vec![0.0; modes];
    let mut h = vec![0.0; modes];
    for k in 0..n {
        let t = grid.point(k);
        let seg = SegmentView {
            data: &data[k * modes..(k + m + 1) * modes],
            n_modes: modes,
            anchor: t,
            dt,
        };
        problem.drift.eval(t, seg, &mut f);
        problem.noise.eval(t, &mut h);
        let (cur, rest) = data.split_at_mut((m + k + 1) * modes);
        let x = &cur[(m + k) * modes..];
        for j in 0..modes {
            let db = increments.as_ref().map_or(0.0, |inc| inc[j][k]);
            rest[j] = decay[j] * x[j] + phi1[j] * f[j] + half[j] * h[j] * db;
        }
    }
    Ok(Trajectory {
        grid,
        delay_steps: m,
        n_modes: modes,
        data,
        diagnostics: Diagnostics {
            iterations: 1,
            sup_differences: Vec::new(),
            seed: None,
        },
    })
}

/// Residual of the integrated equation `d/dt J^{1-α}(x - x(0)) = A x + f`
/// on each cell `[t_k, t_{k+1}]`, `k < n_steps`: the difference quotient of
/// the left side against the cell average of the right side, as a Euclidean
/// norm over modes. Meaningful for `h ≡ 0`.
pub fn caputo_residual(problem: &Problem, traj: &Trajectory) -> Result<Vec<f64>> {
    let grid = traj.grid;
    let n = grid.n_steps();
    let m = traj.delay_steps;
    let modes = traj.n_modes;
    let dt = grid.dt();
    let alpha = problem.alpha;
    let mu = problem.operator.eigenvalues();

    let mut lhs = vec![vec![0.0; n + 1]; modes];
    for (j, l) in lhs.iter_mut().enumerate() {
        let x0 = traj.at_step(0)[j];
        let centered: Vec<f64> = (0..=n).map(|k| traj.at_step(k)[j] - x0).collect();
        *l = if alpha == 1.0 { centered } else { rl_integral(1.0 - alpha, &centered, dt)? };
    }
    let mut f = vec![vec![0.0; modes]; n + 1];
    for (k, fk) in f.iter_mut().enumerate() {
        let seg = SegmentView {
            data: &traj.data[k * modes..(k + m + 1) * modes],
            n_modes: modes,
            anchor: grid.point(k),
            dt,
        };
        problem.drift.eval(grid.point(k), seg, fk);
    }
    Ok((0..n)
        .map(|k| {
            (0..modes)
                .map(|j| {
                    let d = (lhs[j][k + 1] - lhs[j][k]) / dt;
                    let x = 0.5 * (traj.at_step(k)[j] + traj.at_step(k + 1)[j]);
                    let rhs = -mu[j] * x + 0.5 * (f[k][j] + f[k + 1][j]);
                    (d - rhs).powi(2)
                })
                .sum::<f64>()
                .sqrt()
        })
        .collect())
}
