//! Wiener integrals of deterministic step integrands against Q-fBm.
//!
//! An integrand is piecewise constant on the intervals `[t_k, t_{k+1})` of a
//! [`TimeGrid`]. Each interval carries an operator from the noise eigenbasis
//! (columns, one per noise mode) to the state eigenbasis (rows). Diagonal
//! integrands store one scalar per mode.

use crate::error::{Error, Result};
use crate::fbm::{fgn_autocovariance, HurstParameter, Kernel, QFbmPath, TimeGrid};
use crate::quad::QuadratureRule;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `values[k·n + i]` multiplies noise mode `i` into state mode `i`.
    Diagonal { modes: usize },
    /// `values[k·rows·cols + i·cols + j]`, state mode `i`, noise mode `j`.
    Dense { rows: usize, cols: usize },
}

impl Layout {
    fn cell_len(self) -> usize {
        match self {
            Layout::Diagonal { modes } => modes,
            Layout::Dense { rows, cols } => rows * cols,
        }
    }

    pub fn noise_modes(self) -> usize {
        match self {
            Layout::Diagonal { modes } => modes,
            Layout::Dense { cols, .. } => cols,
        }
    }

    pub fn state_modes(self) -> usize {
        match self {
            Layout::Diagonal { modes } => modes,
            Layout::Dense { rows, .. } => rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepIntegrand {
    grid: TimeGrid,
    layout: Layout,
    values: Vec<f64>,
}

impl StepIntegrand {
    pub fn new(grid: TimeGrid, layout: Layout, values: Vec<f64>) -> Result<Self> {
        let cell = layout.cell_len();
        if cell == 0 {
            return Err(Error::invalid("integrand needs at least one mode"));
        }
        if values.len() != grid.n_steps() * cell {
            return Err(Error::invalid(format!(
                "integrand has {} values, expected {} steps × {cell}",
                values.len(),
                grid.n_steps()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("integrand value {i} is not finite")));
        }
        Ok(Self { grid, layout, values })
    }

    /// Diagonal integrand with `φ_n(t_k) = f(t_k, n)` for `n = 0..modes`
    /// (left-point sampling).
    pub fn diagonal_from_fn(grid: TimeGrid, modes: usize, f: impl Fn(f64, usize) -> f64) -> Result<Self> {
        let values = (0..grid.n_steps())
            .flat_map(|k| {
                let t = grid.point(k);
                (0..modes).map(move |n| (t, n))
            })
            .map(|(t, n)| f(t, n))
            .collect();
        Self::new(grid, Layout::Diagonal { modes }, values)
    }

    /// Scalar integrand sampled at left endpoints.
    pub fn scalar_from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::diagonal_from_fn(grid, 1, |t, _| f(t))
    }

    /// `1_{[0,u]}` for a grid point `u`.
    pub fn indicator(grid: TimeGrid, u: f64) -> Result<Self> {
        let m = grid
            .index_of(u)
            .ok_or_else(|| Error::GridMismatch(format!("indicator end {u} is not a grid point")))?;
        let values = (0..grid.n_steps()).map(|k| if k < m { 1.0 } else { 0.0 }).collect();
        Self::new(grid, Layout::Diagonal { modes: 1 }, values)
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn cell(&self, k: usize) -> &[f64] {
        let c = self.layout.cell_len();
        &self.values[k * c..(k + 1) * c]
    }

    /// Copy with every interval at or beyond grid point `t` set to zero.
    pub fn restricted(&self, t: f64) -> Result<Self> {
        let m = self
            .grid
            .index_of(t)
            .ok_or_else(|| Error::GridMismatch(format!("restriction point {t} is not a grid point")))?;
        let mut out = self.clone();
        let c = self.layout.cell_len();
        out.values[m * c..].iter_mut().for_each(|v| *v = 0.0);
        Ok(out)
    }

    fn scalar_values(&self) -> Result<&[f64]> {
        match self.layout {
            Layout::Diagonal { modes: 1 } | Layout::Dense { rows: 1, cols: 1 } => Ok(&self.values),
            other => Err(Error::invalid(format!("scalar integrand required, got {other:?}"))),
        }
    }
}

/// Hilbert–Schmidt norm of `φ Q^{1/2}`: `value² = Σ_n λ_n ‖φ e_n‖²`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct L20Norm {
    pub value: f64,
}

impl L20Norm {
    /// Norm of one interval value of `phi` under eigenvalues `lambda`.
    pub fn of_cell(layout: Layout, cell: &[f64], lambda: &[f64]) -> Result<Self> {
        if lambda.len() != layout.noise_modes() {
            return Err(Error::invalid(format!(
                "{} eigenvalues for {} noise modes",
                lambda.len(),
                layout.noise_modes()
            )));
        }
        let sq: f64 = match layout {
            Layout::Diagonal { .. } => cell.iter().zip(lambda).map(|(v, l)| l * v * v).sum(),
            Layout::Dense { rows, cols } => (0..rows)
                .flat_map(|i| (0..cols).map(move |j| (i, j)))
                .map(|(i, j)| lambda[j] * cell[i * cols + j].powi(2))
                .sum(),
        };
        Ok(Self { value: sq.sqrt() })
    }

    pub fn squared(self) -> f64 {
        self.value * self.value
    }
}

/// `α_H ∬ φ(r) φ(u) |r-u|^{2H-2} du dr` with `α_H = H(2H-1)`.
///
/// Over two grid cells `d` steps apart the kernel integrates exactly to the
/// fractional Gaussian noise autocovariance `γ(d)`, so the norm is the
/// quadratic form `Σ_{i,j} φ_i φ_j γ(|i-j|)`.
pub fn hnorm_sq(h: HurstParameter, phi: &StepIntegrand) -> Result<f64> {
    let v = phi.scalar_values()?;
    let dt = phi.grid.dt();
    let n = v.len();
    let gamma: Vec<f64> = (0..n).map(|d| fgn_autocovariance(h, d, dt)).collect();
    let mut total = 0.0;
    for i in 0..n {
        if v[i] == 0.0 {
            continue;
        }
        let mut row = gamma[0] * v[i];
        for j in 0..i {
            row += 2.0 * gamma[i - j] * v[j];
        }
        total += v[i] * row;
    }
    Ok(total.max(0.0))
}

/// `(K_H^* φ)(s) = ∫_s^b φ(t) ∂K_H/∂t(t, s) dt`, integrated cell by cell with
/// the substitution `v = (t-s)^{H-1/2}` that removes the singularity at `t = s`.
pub fn khstar_transform(h: HurstParameter, phi: &StepIntegrand, s: f64, rule: &QuadratureRule) -> Result<f64> {
    let v = phi.scalar_values()?;
    let grid = phi.grid;
    let b = grid.horizon();
    if !(s > 0.0 && s < b) {
        return Err(Error::domain(format!("K_H* needs 0 < s < {b}, got {s}")));
    }
    let kernel = Kernel::new(h);
    let mut total = 0.0;
    for (k, &c) in v.iter().enumerate() {
        let hi = grid.point(k + 1);
        if c == 0.0 || hi <= s {
            continue;
        }
        let lo = grid.point(k).max(s);
        total += c * kernel.integral(s, lo, hi, rule);
    }
    if !total.is_finite() {
        return Err(Error::Convergence(format!("K_H* quadrature not finite at s = {s}")));
    }
    Ok(total)
}

/// `Σ_k φ(t_k) ΔB_Q^H(t_k)` as a state-coefficient vector. The noise modes
/// already carry the `√λ_n` scaling.
pub fn wiener_integral(phi: &StepIntegrand, noise: &QFbmPath) -> Result<Vec<f64>> {
    if phi.grid != noise.grid() {
        return Err(Error::GridMismatch(format!("integrand grid {:?} vs noise grid {:?}", phi.grid, noise.grid())));
    }
    let layout = phi.layout;
    if layout.noise_modes() != noise.n_modes() {
        return Err(Error::invalid(format!(
            "integrand acts on {} noise modes, noise has {}",
            layout.noise_modes(),
            noise.n_modes()
        )));
    }
    let increments: Vec<Vec<f64>> = (0..noise.n_modes()).map(|n| noise.increments(n)).collect();
    let mut out = vec![0.0; layout.state_modes()];
    for k in 0..phi.grid.n_steps() {
        let cell = phi.cell(k);
        match layout {
            Layout::Diagonal { modes } => {
                for n in 0..modes {
                    out[n] += cell[n] * increments[n][k];
                }
            }
            Layout::Dense { rows, cols } => {
                for (i, o) in out.iter_mut().enumerate().take(rows) {
                    *o += (0..cols).map(|j| cell[i * cols + j] * increments[j][k]).sum::<f64>();
                }
            }
        }
    }
    Ok(out)
}

/// `∫_0^t ‖φ(s)‖²_{L_2^0} ds`, exact for step integrands.
pub fn l20_square_integral(phi: &StepIntegrand, t: f64, lambda: &[f64]) -> Result<f64> {
    let grid = phi.grid;
    if !(0.0..=grid.horizon() * (1.0 + 1e-12)).contains(&t) {
        return Err(Error::domain(format!("t = {t} outside [0, {}]", grid.horizon())));
    }
    let mut total = 0.0;
    for k in 0..grid.n_steps() {
        let lo = grid.point(k);
        if lo >= t {
            break;
        }
        let len = grid.point(k + 1).min(t) - lo;
        total += L20Norm::of_cell(phi.layout, phi.cell(k), lambda)?.squared() * len;
    }
    Ok(total)
}

/// `2H t^{2H-1} ∫_0^t ‖φ(s)‖²_{L_2^0} ds`.
pub fn second_moment_bound(h: HurstParameter, t: f64, phi: &StepIntegrand, lambda: &[f64]) -> Result<f64> {
    let hv = h.value();
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * hv * t.powf(2.0 * hv - 1.0) * l20_square_integral(phi, t, lambda)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fbm::{default_kernel_rule, generate_qfbm, kernel_khs};

    fn h(v: f64) -> HurstParameter {
        HurstParameter::new(v).unwrap()
    }

    #[test]
    fn hnorm_of_indicator() {
        let g = TimeGrid::from_horizon(1.0, 64).unwrap();
        for hv in [0.6, 0.75, 0.9] {
            for u in [0.25, 0.5, 1.0] {
                let phi = StepIntegrand::indicator(g, u).unwrap();
                let v = hnorm_sq(h(hv), &phi).unwrap();
                assert!((v - u.powf(2.0 * hv)).abs() < 1e-13, "H={hv} u={u}");
            }
        }
        let zero = StepIntegrand::scalar_from_fn(g, |_| 0.0).unwrap();
        assert_eq!(hnorm_sq(h(0.7), &zero).unwrap(), 0.0);
    }

    #[test]
    fn khstar_of_indicator() {
        let g = TimeGrid::from_horizon(1.0, 16).unwrap();
        let rule = default_kernel_rule();
        let phi = StepIntegrand::indicator(g, 0.5).unwrap();
        let k = khstar_transform(h(0.7), &phi, 0.2, &rule).unwrap();
        let direct = kernel_khs(h(0.7), 0.5, 0.2, &rule).unwrap();
        assert!(((k - direct) / direct).abs() < 1e-10);
        assert_eq!(khstar_transform(h(0.7), &phi, 0.75, &rule).unwrap(), 0.0);
        assert!(khstar_transform(h(0.7), &phi, 0.0, &rule).is_err());
    }

    #[test]
    fn wiener_integral_telescopes() {
        let g = TimeGrid::from_horizon(2.0, 128).unwrap();
        let q = generate_qfbm(h(0.7), g, &[1.0], 11).unwrap();
        let one = StepIntegrand::scalar_from_fn(g, |_| 1.0).unwrap();
        let x = wiener_integral(&one, &q).unwrap();
        assert!((x[0] - q.mode(0)[128]).abs() < 1e-12);
        let zero = StepIntegrand::scalar_from_fn(g, |_| 0.0).unwrap();
        assert_eq!(wiener_integral(&zero, &q).unwrap(), vec![0.0]);
        let other = TimeGrid::from_horizon(1.0, 128).unwrap();
        let bad = StepIntegrand::scalar_from_fn(other, |_| 1.0).unwrap();
        assert!(matches!(wiener_integral(&bad, &q), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn dense_matches_diagonal() {
        let g = TimeGrid::from_horizon(1.0, 32).unwrap();
        let lambda = [1.0, 0.25, 1.0 / 9.0];
        let q = generate_qfbm(h(0.8), g, &lambda, 3).unwrap();
        let diag = StepIntegrand::diagonal_from_fn(g, 3, |t, n| 1.0 + t * n as f64).unwrap();
        let dense_vals: Vec<f64> = (0..32)
            .flat_map(|k| {
                let c = diag.cell(k).to_vec();
                (0..9).map(move |idx| if idx % 4 == 0 { c[idx / 4] } else { 0.0 })
            })
            .collect();
        let dense = StepIntegrand::new(g, Layout::Dense { rows: 3, cols: 3 }, dense_vals).unwrap();
        let a = wiener_integral(&diag, &q).unwrap();
        let b = wiener_integral(&dense, &q).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
        }
        let bd = second_moment_bound(h(0.8), 1.0, &diag, &lambda).unwrap();
        let bn = second_moment_bound(h(0.8), 1.0, &dense, &lambda).unwrap();
        assert!((bd - bn).abs() < 1e-14);
    }

    #[test]
    fn second_moment_bound_examples() {
        let g = TimeGrid::from_horizon(1.0, 10).unwrap();
        let one = StepIntegrand::scalar_from_fn(g, |_| 1.0).unwrap();
        assert!((second_moment_bound(h(0.75), 1.0, &one, &[1.0]).unwrap() - 1.5).abs() < 1e-14);
        let c = StepIntegrand::scalar_from_fn(g, |_| 3.0).unwrap();
        let want = 2.0 * 0.6 * 0.5f64.powf(1.2) * 9.0;
        assert!((second_moment_bound(h(0.6), 0.5, &c, &[1.0]).unwrap() - want).abs() < 1e-13);
        let zero = StepIntegrand::scalar_from_fn(g, |_| 0.0).unwrap();
        assert_eq!(second_moment_bound(h(0.6), 1.0, &zero, &[1.0]).unwrap(), 0.0);
    }

    #[test]
    fn restriction_zeroes_tail() {
        let g = TimeGrid::from_horizon(1.0, 4).unwrap();
        let phi = StepIntegrand::scalar_from_fn(g, |_| 2.0).unwrap().restricted(0.5).unwrap();
        assert_eq!(phi.values, vec![2.0, 2.0, 0.0, 0.0]);
        assert!(phi.restricted(0.3).is_err());
    }
}
