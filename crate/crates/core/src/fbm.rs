//! Fractional Brownian motion with Hurst index `H ∈ (1/2, 1)`: covariance,
//! Volterra kernel, three path generators and Q-fBm assembly.
//!
//! Generators consume standard normals from a ChaCha8 stream seeded with the
//! path seed, in this order:
//!
//! * Cholesky: `ξ_1..ξ_n`, path `= L ξ` with `L Lᵀ = (R_H(t_i, t_j))`.
//! * Circulant: `(ξ'_k, ξ''_k)` for `k = 0..2n`, increments
//!   `Re FFT(√(λ_k/2n)(ξ'_k + iξ''_k))_j`, `j < n`.
//! * Volterra: `ξ_0..ξ_{n-1}`, one per interval, path
//!   `β(t_k) = Σ_{j<k} (∫_{t_j}^{t_{j+1}} K_H(t_k,s)² ds)^{1/2} ξ_j`.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::export::{csv_writer, sig17};
use crate::quad::{gauss_legendre, QuadratureRule};
use crate::rng::{derive_seed, stream};
use crate::specfun::beta;

/// Largest grid accepted by the dense Cholesky generator.
pub const CHOLESKY_MAX_STEPS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct HurstParameter(f64);

impl HurstParameter {
    pub fn new(h: f64) -> Result<Self> {
        if !(h > 0.5 && h < 1.0) {
            return Err(Error::invalid(format!("Hurst index {h} not in (1/2, 1)")));
        }
        Ok(Self(h))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for HurstParameter {
    type Error = Error;

    fn try_from(h: f64) -> Result<Self> {
        Self::new(h)
    }
}

impl From<HurstParameter> for f64 {
    fn from(h: HurstParameter) -> f64 {
        h.0
    }
}

/// Uniform grid `t_k = k·dt`, `k = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    dt: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(dt: f64, n_steps: usize) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::invalid(format!("time step {dt} must be positive and finite")));
        }
        if n_steps == 0 {
            return Err(Error::invalid("time grid needs at least one step"));
        }
        if !(dt * n_steps as f64).is_finite() {
            return Err(Error::invalid("time grid horizon overflows"));
        }
        Ok(Self { dt, n_steps })
    }

    pub fn from_horizon(horizon: f64, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::invalid("time grid needs at least one step"));
        }
        Self::new(horizon / n_steps as f64, n_steps)
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Number of grid points, `n_steps + 1`.
    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn horizon(&self) -> f64 {
        self.n_steps as f64 * self.dt
    }

    pub fn point(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    pub fn points(&self) -> Vec<f64> {
        (0..=self.n_steps).map(|k| self.point(k)).collect()
    }

    /// Index `k` with `t = k·dt` up to a relative `1e-9`, if any.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let k = (t / self.dt).round();
        if k < 0.0 || k > self.n_steps as f64 || (t - k * self.dt).abs() > 1e-9 * self.dt.max(t.abs()) {
            return None;
        }
        Some(k as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Cholesky,
    Circulant,
    Volterra,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::Cholesky => "cholesky",
            GeneratorKind::Circulant => "circulant",
            GeneratorKind::Volterra => "volterra",
        })
    }
}

/// One sampled fBm trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FbmPath {
    hurst: HurstParameter,
    grid: TimeGrid,
    values: Vec<f64>,
    seed: u64,
    generator: GeneratorKind,
}

impl FbmPath {
    pub fn new(
        hurst: HurstParameter,
        grid: TimeGrid,
        values: Vec<f64>,
        seed: u64,
        generator: GeneratorKind,
    ) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} path values for {} grid points",
                values.len(),
                grid.len()
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::invalid("fBm path must start at 0"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("fBm path has non-finite values"));
        }
        Ok(Self {
            hurst,
            grid,
            values,
            seed,
            generator,
        })
    }

    pub fn hurst(&self) -> HurstParameter {
        self.hurst
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn generator(&self) -> GeneratorKind {
        self.generator
    }

    /// `β(t_{k+1}) - β(t_k)`.
    pub fn increments(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }

    fn scaled(&self, factor: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }

    /// CSV with columns `t,value`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv_writer(w);
        out.write_record(["t", "value"])?;
        for (k, v) in self.values.iter().enumerate() {
            out.write_record([sig17(self.grid.point(k)), sig17(*v)])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// `Σ √λ_n e_n β_n^H` truncated to `N` modes; mode `n` is stored already
/// multiplied by `√λ_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QFbmPath {
    hurst: HurstParameter,
    grid: TimeGrid,
    eigenvalues: Vec<f64>,
    modes: Vec<FbmPath>,
    seed: u64,
}

impl QFbmPath {
    /// Assembles scaled modes. Each entry of `modes` is multiplied by `√λ_n`.
    pub fn from_unit_modes(eigenvalues: Vec<f64>, modes: Vec<FbmPath>, seed: u64) -> Result<Self> {
        validate_eigenvalues(&eigenvalues)?;
        if modes.len() != eigenvalues.len() {
            return Err(Error::invalid(format!(
                "{} modes for {} eigenvalues",
                modes.len(),
                eigenvalues.len()
            )));
        }
        let (hurst, grid) = (modes[0].hurst, modes[0].grid);
        if modes.iter().any(|m| m.grid != grid || m.hurst != hurst) {
            return Err(Error::GridMismatch("Q-fBm modes differ in grid or Hurst index".into()));
        }
        let modes = modes
            .iter()
            .zip(&eigenvalues)
            .map(|(m, &l)| m.scaled(l.sqrt()))
            .collect();
        Ok(Self {
            hurst,
            grid,
            eigenvalues,
            modes,
            seed,
        })
    }

    pub fn hurst(&self) -> HurstParameter {
        self.hurst
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Scaled path `√λ_n β_n^H` of mode `n` (0-based).
    pub fn mode(&self, n: usize) -> &[f64] {
        self.modes[n].values()
    }

    /// Scaled increments `√λ_n Δβ_n^H(t_k)` of mode `n` (0-based).
    pub fn increments(&self, n: usize) -> Vec<f64> {
        self.modes[n].increments()
    }

    /// Every `factor`-th sample: the same path seen on a grid with step `factor·dt`.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        let n = self.grid.n_steps();
        if factor == 0 || !n.is_multiple_of(factor) {
            return Err(Error::GridMismatch(format!("cannot coarsen {n} steps by a factor of {factor}")));
        }
        let grid = TimeGrid::new(self.grid.dt() * factor as f64, n / factor)?;
        let modes = self
            .modes
            .iter()
            .map(|m| FbmPath {
                grid,
                values: m.values.iter().step_by(factor).copied().collect(),
                ..m.clone()
            })
            .collect();
        Ok(Self {
            grid,
            modes,
            ..self.clone()
        })
    }

    /// CSV with columns `t,mode_1..mode_N`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv_writer(w);
        let mut header = vec!["t".to_string()];
        header.extend((1..=self.n_modes()).map(|n| format!("mode_{n}")));
        out.write_record(&header)?;
        for k in 0..self.grid.len() {
            let mut row = vec![sig17(self.grid.point(k))];
            row.extend(self.modes.iter().map(|m| sig17(m.values[k])));
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }
}

fn validate_eigenvalues(eigenvalues: &[f64]) -> Result<()> {
    if eigenvalues.is_empty() {
        return Err(Error::invalid("at least one covariance eigenvalue is required"));
    }
    if let Some(l) = eigenvalues.iter().find(|l| !(**l >= 0.0 && l.is_finite())) {
        return Err(Error::invalid(format!("covariance eigenvalue {l} must be finite and >= 0")));
    }
    Ok(())
}

/// `R_H(t, s) = ½(t^{2H} + s^{2H} - |t-s|^{2H})`.
pub fn covariance(h: HurstParameter, t: f64, s: f64) -> f64 {
    let two_h = 2.0 * h.0;
    0.5 * (t.powf(two_h) + s.powf(two_h) - (t - s).abs().powf(two_h))
}

/// Autocovariance of the increment sequence on a grid of step `dt` at lag `k`.
pub fn fgn_autocovariance(h: HurstParameter, k: usize, dt: f64) -> f64 {
    let two_h = 2.0 * h.0;
    let k = k as f64;
    0.5 * ((k + 1.0).powf(two_h) - 2.0 * k.powf(two_h) + (k - 1.0).abs().powf(two_h)) * dt.powf(two_h)
}

/// `c_H = [H(2H-1) / B(2-2H, H-1/2)]^{1/2}`.
pub fn c_h(h: HurstParameter) -> f64 {
    let h = h.0;
    let b = beta(2.0 - 2.0 * h, h - 0.5).expect("Beta arguments are positive for H in (1/2, 1)");
    (h * (2.0 * h - 1.0) / b).sqrt()
}

/// `∂K_H/∂t (t, s) = c_H (t/s)^{H-1/2} (t-s)^{H-3/2}`.
pub fn kernel_dkh_dt(h: HurstParameter, t: f64, s: f64) -> Result<f64> {
    if !(s > 0.0 && t > s) {
        return Err(Error::domain(format!("kernel derivative needs t > s > 0, got t = {t}, s = {s}")));
    }
    let a = h.0 - 0.5;
    Ok(c_h(h) * (t / s).powf(a) * (t - s).powf(a - 1.0))
}

/// Kernel data reused across many evaluations.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernel {
    a: f64,
    inv_a: f64,
    scale: f64,
}

impl Kernel {
    pub(crate) fn new(h: HurstParameter) -> Self {
        let a = h.0 - 0.5;
        Self {
            a,
            inv_a: 1.0 / a,
            scale: c_h(h) / a,
        }
    }

    /// `∫_{u0}^{u1} ∂K_H/∂u (u, s) du` with `v = (u-s)^{H-1/2}`, which turns
    /// the integrand into `(c_H/(H-1/2)) (1 + v^{1/(H-1/2)}/s)^{H-1/2}`.
    fn increment(&self, s: f64, u0: f64, u1: f64, rule: &QuadratureRule) -> f64 {
        let v0 = (u0 - s).max(0.0).powf(self.a);
        let v1 = (u1 - s).powf(self.a);
        self.scale * rule.integrate_on(v0, v1, |v| (1.0 + v.powf(self.inv_a) / s).powf(self.a))
    }

    /// `K_H(t, s)` with panels refined around `v = s^{H-1/2}`, where the
    /// transformed integrand bends.
    fn full(&self, t: f64, s: f64, rule: &QuadratureRule) -> f64 {
        self.integral(s, s, t, rule)
    }

    /// `∫_{u0}^{u1} ∂K_H/∂u (u, s) du` for `s ≤ u0 < u1`, on the panels of [`Kernel::full`].
    pub(crate) fn integral(&self, s: f64, u0: f64, u1: f64, rule: &QuadratureRule) -> f64 {
        let v0 = (u0 - s).max(0.0).powf(self.a);
        let v1 = (u1 - s).powf(self.a);
        let vc = s.powf(self.a);
        let mut breaks = vec![v0];
        for k in -4..=4 {
            let b = vc * 2f64.powi(k);
            if b > v0 && b < v1 {
                breaks.push(b);
            }
        }
        breaks.push(v1);
        let mut total = 0.0;
        for w in breaks.windows(2) {
            total += rule.integrate_on(w[0], w[1], |v| (1.0 + v.powf(self.inv_a) / s).powf(self.a));
        }
        self.scale * total
    }
}

/// `K_H(t, s) = ∫_s^t ∂K_H/∂u (u, s) du`, computed by `rule` (a rule on
/// `[0, 1]`, mapped per panel) after the substitution `u = s + v^{1/(H-1/2)}`.
pub fn kernel_khs(h: HurstParameter, t: f64, s: f64, rule: &QuadratureRule) -> Result<f64> {
    if !(s > 0.0 && t > s && t.is_finite()) {
        return Err(Error::domain(format!("kernel needs t > s > 0, got t = {t}, s = {s}")));
    }
    let v = Kernel::new(h).full(t, s, rule);
    if !v.is_finite() {
        return Err(Error::Convergence(format!("kernel quadrature not finite at t = {t}, s = {s}")));
    }
    Ok(v)
}

/// Default rule for [`kernel_khs`].
pub fn default_kernel_rule() -> QuadratureRule {
    QuadratureRule::gauss_legendre_unit(24)
}

/// A generator with precomputed, seed-independent state.
pub trait PathSampler: Send + Sync {
    fn kind(&self) -> GeneratorKind;
    fn hurst(&self) -> HurstParameter;
    fn grid(&self) -> TimeGrid;

    /// Writes one path into `values` (length `n_steps + 1`, `values[0] = 0`).
    fn sample_into(&self, rng: &mut ChaCha8Rng, values: &mut [f64]);

    fn generate(&self, seed: u64) -> FbmPath {
        let mut values = vec![0.0; self.grid().len()];
        self.sample_into(&mut stream(seed), &mut values);
        FbmPath {
            hurst: self.hurst(),
            grid: self.grid(),
            values,
            seed,
            generator: self.kind(),
        }
    }
}

fn normals(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Exact sampler: dense lower-triangular factor of the covariance matrix,
/// stored row-packed.
pub struct CholeskySampler {
    hurst: HurstParameter,
    grid: TimeGrid,
    factor: Vec<f64>,
}

fn packed(i: usize, j: usize) -> usize {
    i * (i + 1) / 2 + j
}

impl CholeskySampler {
    pub fn new(hurst: HurstParameter, grid: TimeGrid) -> Result<Self> {
        let n = grid.n_steps;
        if n > CHOLESKY_MAX_STEPS {
            return Err(Error::invalid(format!(
                "Cholesky generator limited to {CHOLESKY_MAX_STEPS} steps, got {n}"
            )));
        }
        let mut l = vec![0.0; n * (n + 1) / 2];
        for i in 0..n {
            let ti = grid.point(i + 1);
            for j in 0..=i {
                let mut sum = covariance(hurst, ti, grid.point(j + 1));
                for k in 0..j {
                    sum -= l[packed(i, k)] * l[packed(j, k)];
                }
                if i == j {
                    if !(sum > 0.0) {
                        return Err(Error::NotPositiveDefinite { minor: i + 1, pivot: sum });
                    }
                    l[packed(i, i)] = sum.sqrt();
                } else {
                    l[packed(i, j)] = sum / l[packed(j, j)];
                }
            }
        }
        Ok(Self {
            hurst,
            grid,
            factor: l,
        })
    }
}

impl PathSampler for CholeskySampler {
    fn kind(&self) -> GeneratorKind {
        GeneratorKind::Cholesky
    }

    fn hurst(&self) -> HurstParameter {
        self.hurst
    }

    fn grid(&self) -> TimeGrid {
        self.grid
    }

    fn sample_into(&self, rng: &mut ChaCha8Rng, values: &mut [f64]) {
        let n = self.grid.n_steps;
        let xi = normals(rng, n);
        values[0] = 0.0;
        for i in 0..n {
            let row = &self.factor[packed(i, 0)..=packed(i, i)];
            values[i + 1] = row.iter().zip(&xi).map(|(a, b)| a * b).sum();
        }
    }
}

/// Circulant embedding of the increment autocovariance (Davies–Harte).
pub struct CirculantSampler {
    hurst: HurstParameter,
    grid: TimeGrid,
    sqrt_eigs: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
}

impl CirculantSampler {
    pub fn new(hurst: HurstParameter, grid: TimeGrid) -> Result<Self> {
        let n = grid.n_steps;
        let m = 2 * n;
        let mut c = vec![Complex::new(0.0, 0.0); m];
        for k in 0..=n {
            c[k].re = fgn_autocovariance(hurst, k, grid.dt);
        }
        for k in 1..n {
            c[m - k].re = c[k].re;
        }
        let fft = FftPlanner::new().plan_fft_forward(m);
        fft.process(&mut c);
        let max = c.iter().map(|z| z.re).fold(0.0, f64::max);
        let mut sqrt_eigs = Vec::with_capacity(m);
        for (index, z) in c.iter().enumerate() {
            if z.re < -1e-12 * max {
                return Err(Error::Embedding { index, value: z.re });
            }
            sqrt_eigs.push((z.re.max(0.0) / m as f64).sqrt());
        }
        Ok(Self {
            hurst,
            grid,
            sqrt_eigs,
            fft,
        })
    }

    /// Eigenvalues of the circulant embedding.
    pub fn embedding_eigenvalues(&self) -> Vec<f64> {
        let m = self.sqrt_eigs.len() as f64;
        self.sqrt_eigs.iter().map(|s| s * s * m).collect()
    }
}

impl PathSampler for CirculantSampler {
    fn kind(&self) -> GeneratorKind {
        GeneratorKind::Circulant
    }

    fn hurst(&self) -> HurstParameter {
        self.hurst
    }

    fn grid(&self) -> TimeGrid {
        self.grid
    }

    fn sample_into(&self, rng: &mut ChaCha8Rng, values: &mut [f64]) {
        let mut buf: Vec<Complex<f64>> = self
            .sqrt_eigs
            .iter()
            .map(|&s| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex::new(s * re, s * im)
            })
            .collect();
        self.fft.process(&mut buf);
        values[0] = 0.0;
        for j in 0..self.grid.n_steps {
            values[j + 1] = values[j] + buf[j].re;
        }
    }
}

/// Discretised Volterra representation with per-interval root-mean-square
/// kernel mass; row `k-1` of `weights` holds the `k` weights for `t_k`.
pub struct VolterraSampler {
    hurst: HurstParameter,
    grid: TimeGrid,
    weights: Vec<Vec<f64>>,
}

impl VolterraSampler {
    pub fn new(hurst: HurstParameter, grid: TimeGrid) -> Result<Self> {
        Self::with_rule(hurst, grid, &default_kernel_rule())
    }

    /// `rule` evaluates full kernel values; per-step increments use an
    /// 8-point rule.
    pub fn with_rule(hurst: HurstParameter, grid: TimeGrid, rule: &QuadratureRule) -> Result<Self> {
        let n = grid.n_steps;
        let dt = grid.dt;
        let h = hurst.0;
        let kernel = Kernel::new(hurst);
        let step_rule = QuadratureRule::gauss_legendre_unit(8);
        let (x, w) = gauss_legendre(8);
        let unit: Vec<(f64, f64)> = x.iter().zip(&w).map(|(&x, &w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
        let mut mass2: Vec<Vec<f64>> = (1..=n).map(|k| vec![0.0; k]).collect();

        // Right-singular piece: (t-s) = len·w^{1/(2H)} on [t - len, t].
        let right_piece = |t: f64, len: f64| -> f64 {
            let p = 1.0 / (2.0 * h);
            unit.iter()
                .map(|&(u, wt)| {
                    let s = t - len * u.powf(p);
                    let k = kernel.full(t, s, rule);
                    wt * k * k * len * p * u.powf(p - 1.0)
                })
                .sum()
        };
        // Left-singular nodes: s = len·w^{1/(2-2H)} on [0, len].
        let left_nodes = |len: f64| -> Vec<(f64, f64)> {
            let p = 1.0 / (2.0 - 2.0 * h);
            unit.iter().map(|&(u, wt)| (len * u.powf(p), wt * len * p * u.powf(p - 1.0))).collect()
        };

        // k = 1: both endpoint singularities on [0, dt].
        {
            let t = dt;
            let left: f64 = left_nodes(0.5 * dt)
                .iter()
                .map(|&(s, wt)| {
                    let k = kernel.full(t, s, rule);
                    wt * k * k
                })
                .sum();
            mass2[0][0] = left + right_piece(t, 0.5 * dt);
        }
        // Last interval of every t_k, k >= 2.
        for k in 2..=n {
            mass2[k - 1][k - 1] = right_piece(grid.point(k), dt);
        }
        // Interval j is marched through t_{j+2}, ..., t_n.
        for j in 0..n.saturating_sub(1) {
            let nodes: Vec<(f64, f64)> = if j == 0 {
                left_nodes(dt)
            } else {
                unit.iter().map(|&(u, wt)| (grid.point(j) + dt * u, wt * dt)).collect()
            };
            for &(s, wt) in &nodes {
                let mut kval = kernel.full(grid.point(j + 1), s, rule);
                for k in (j + 2)..=n {
                    kval += kernel.increment(s, grid.point(k - 1), grid.point(k), &step_rule);
                    mass2[k - 1][j] += wt * kval * kval;
                }
            }
        }
        let mut weights = mass2;
        for row in &mut weights {
            for v in row.iter_mut() {
                if !v.is_finite() {
                    return Err(Error::Convergence("Volterra kernel mass is not finite".into()));
                }
                *v = v.sqrt();
            }
        }
        Ok(Self { hurst, grid, weights })
    }

    /// `(∫_{t_j}^{t_{j+1}} K_H(t_k, s)² ds)^{1/2}` for `1 ≤ k ≤ n`, `j < k`.
    pub fn weight(&self, k: usize, j: usize) -> f64 {
        self.weights[k - 1][j]
    }
}

impl PathSampler for VolterraSampler {
    fn kind(&self) -> GeneratorKind {
        GeneratorKind::Volterra
    }

    fn hurst(&self) -> HurstParameter {
        self.hurst
    }

    fn grid(&self) -> TimeGrid {
        self.grid
    }

    fn sample_into(&self, rng: &mut ChaCha8Rng, values: &mut [f64]) {
        let xi = normals(rng, self.grid.n_steps);
        values[0] = 0.0;
        for (k, row) in self.weights.iter().enumerate() {
            values[k + 1] = row.iter().zip(&xi).map(|(a, b)| a * b).sum();
        }
    }
}

pub fn sampler(kind: GeneratorKind, hurst: HurstParameter, grid: TimeGrid) -> Result<Box<dyn PathSampler>> {
    Ok(match kind {
        GeneratorKind::Cholesky => Box::new(CholeskySampler::new(hurst, grid)?),
        GeneratorKind::Circulant => Box::new(CirculantSampler::new(hurst, grid)?),
        GeneratorKind::Volterra => Box::new(VolterraSampler::new(hurst, grid)?),
    })
}

pub fn generate_cholesky(hurst: HurstParameter, grid: TimeGrid, seed: u64) -> Result<FbmPath> {
    Ok(CholeskySampler::new(hurst, grid)?.generate(seed))
}

pub fn generate_circulant(hurst: HurstParameter, grid: TimeGrid, seed: u64) -> Result<FbmPath> {
    Ok(CirculantSampler::new(hurst, grid)?.generate(seed))
}

pub fn generate_volterra(hurst: HurstParameter, grid: TimeGrid, seed: u64, rule: &QuadratureRule) -> Result<FbmPath> {
    Ok(VolterraSampler::with_rule(hurst, grid, rule)?.generate(seed))
}

/// Q-fBm sampler: mode `n` (0-based) draws from stream `derive_seed(seed, n)`.
pub struct QFbmSampler {
    inner: Box<dyn PathSampler>,
    eigenvalues: Vec<f64>,
}

impl QFbmSampler {
    pub fn new(kind: GeneratorKind, hurst: HurstParameter, grid: TimeGrid, eigenvalues: Vec<f64>) -> Result<Self> {
        validate_eigenvalues(&eigenvalues)?;
        Ok(Self {
            inner: sampler(kind, hurst, grid)?,
            eigenvalues,
        })
    }

    pub fn grid(&self) -> TimeGrid {
        self.inner.grid()
    }

    pub fn hurst(&self) -> HurstParameter {
        self.inner.hurst()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn generate(&self, seed: u64) -> QFbmPath {
        let modes = self
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(n, &l)| self.inner.generate(derive_seed(seed, n as u64)).scaled(l.sqrt()))
            .collect();
        QFbmPath {
            hurst: self.inner.hurst(),
            grid: self.inner.grid(),
            eigenvalues: self.eigenvalues.clone(),
            modes,
            seed,
        }
    }
}

/// Q-fBm with the default (circulant) generator.
pub fn generate_qfbm(hurst: HurstParameter, grid: TimeGrid, eigenvalues: &[f64], seed: u64) -> Result<QFbmPath> {
    Ok(QFbmSampler::new(GeneratorKind::Circulant, hurst, grid, eigenvalues.to_vec())?.generate(seed))
}
