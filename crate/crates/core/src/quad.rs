//! Quadrature building blocks: Gauss–Legendre nodes, fixed composite rules on
//! `[0, R]`, and an adaptive Gauss–Kronrod (7, 15) integrator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, computed by Newton
/// iteration on the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        // Tricomi initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A fixed quadrature rule on `[0, upper_cutoff]`.
///
/// Nodes are strictly increasing and non-negative. Rules built on the unit
/// interval (`upper_cutoff == 1`) can be mapped onto any `[a, b]` with
/// [`QuadratureRule::integrate_on`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    upper_cutoff: f64,
}

impl QuadratureRule {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>, upper_cutoff: f64) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::invalid("quadrature nodes and weights differ in length"));
        }
        if !(upper_cutoff > 0.0 && upper_cutoff.is_finite()) {
            return Err(Error::invalid("quadrature cutoff must be positive and finite"));
        }
        if nodes.iter().any(|&x| !(x >= 0.0 && x <= upper_cutoff)) {
            return Err(Error::invalid("quadrature nodes must lie in [0, cutoff]"));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("quadrature nodes must be strictly increasing"));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::invalid("quadrature weights must be finite"));
        }
        Ok(Self {
            nodes,
            weights,
            upper_cutoff,
        })
    }

    /// `n`-point Gauss–Legendre rule on `[0, 1]`.
    pub fn gauss_legendre_unit(n: usize) -> Self {
        let (x, w) = gauss_legendre(n);
        Self {
            nodes: x.iter().map(|&t| 0.5 * (t + 1.0)).collect(),
            weights: w.iter().map(|&v| 0.5 * v).collect(),
            upper_cutoff: 1.0,
        }
    }

    /// Composite Gauss–Legendre rule on `[0, cutoff]` with geometrically graded
    /// panels toward the origin and uniform panels of width at most
    /// `max_panel` beyond `1` (or beyond `cutoff` if smaller).
    ///
    /// The grading resolves integrable endpoint behaviour such as `r^δ`,
    /// `δ > -1`, at the origin.
    pub fn graded(cutoff: f64, order: usize, smallest: f64, ratio: f64, max_panel: f64) -> Result<Self> {
        if !(cutoff > 0.0 && smallest > 0.0 && ratio > 1.0 && max_panel > 0.0) {
            return Err(Error::invalid("graded rule parameters must be positive (ratio > 1)"));
        }
        let knee = cutoff.min(1.0);
        let mut breaks = vec![0.0];
        let mut x = smallest.min(knee);
        while x < knee {
            breaks.push(x);
            x *= ratio;
        }
        breaks.push(knee);
        if cutoff > knee {
            let panels = ((cutoff - knee) / max_panel).ceil().max(1.0) as usize;
            let h = (cutoff - knee) / panels as f64;
            for i in 1..panels {
                breaks.push(knee + i as f64 * h);
            }
            breaks.push(cutoff);
        }
        Self::composite(&breaks, order)
    }

    /// Composite Gauss–Legendre rule over the given strictly increasing breakpoints.
    pub fn composite(breaks: &[f64], order: usize) -> Result<Self> {
        if breaks.len() < 2 || breaks[0] < 0.0 {
            return Err(Error::invalid("composite rule needs at least two non-negative breakpoints"));
        }
        let (x, w) = gauss_legendre(order);
        let mut nodes = Vec::with_capacity((breaks.len() - 1) * order);
        let mut weights = Vec::with_capacity(nodes.capacity());
        for pair in breaks.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(mid + half * xi);
                weights.push(half * wi);
            }
        }
        Self::new(nodes, weights, *breaks.last().unwrap())
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn upper_cutoff(&self) -> f64 {
        self.upper_cutoff
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_0^cutoff f`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        let mut acc = NeumaierSum::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(x));
        }
        acc.total()
    }

    /// Maps the rule affinely from `[0, cutoff]` onto `[a, b]` and integrates.
    pub fn integrate_on<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let scale = (b - a) / self.upper_cutoff;
        let mut acc = NeumaierSum::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(a + scale * x));
        }
        scale * acc.total()
    }
}

/// Compensated (Kahan–Babuška–Neumaier) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Returns (integral, |Kronrod - Gauss|, integral of |f|).
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let err = ((kronrod - gauss) * h).abs();
    (kronrod * h, err, abs * h.abs())
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]` with the
/// interval pre-split at `breaks` (points outside `(a, b)` are ignored).
///
/// Returns the integral estimate and its error estimate; fails with
/// [`Error::Convergence`] when `max_intervals` is exhausted before the
/// requested tolerance `max(abs_tol, rel_tol·|I|)` is met. Error estimates
/// at the rounding level of `∫|f|` are accepted as converged.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<(f64, f64)> {
    let mut pts = vec![a];
    let mut interior: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    interior.sort_by(|x, y| x.total_cmp(y));
    pts.extend(interior);
    pts.push(b);
    pts.dedup();

    // (a, b, value, error, integral of |f|)
    let mut intervals: Vec<(f64, f64, f64, f64, f64)> = pts
        .windows(2)
        .map(|w| {
            let (v, e, m) = gk15(&mut f, w[0], w[1]);
            (w[0], w[1], v, e, m)
        })
        .collect();
    loop {
        let mut total = NeumaierSum::default();
        let (mut err, mut magnitude) = (0.0, 0.0);
        for iv in &intervals {
            total.add(iv.2);
            err += iv.3;
            magnitude += iv.4;
        }
        let total = total.total();
        let roundoff = 50.0 * f64::EPSILON * magnitude;
        if err <= abs_tol.max(rel_tol * total.abs()).max(roundoff) {
            return Ok((total, err));
        }
        if intervals.len() >= max_intervals {
            return Err(Error::Convergence(format!(
                "adaptive quadrature on [{a}, {b}] stopped at {} intervals with error {err:.3e}",
                intervals.len()
            )));
        }
        let (idx, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, ..) = intervals.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            return Err(Error::Convergence(format!(
                "adaptive quadrature cannot bisect [{lo}, {hi}] further"
            )));
        }
        let (v1, e1, m1) = gk15(&mut f, lo, mid);
        let (v2, e2, m2) = gk15(&mut f, mid, hi);
        intervals.push((lo, mid, v1, e1, m1));
        intervals.push((mid, hi, v2, e2, m2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        for n in [1, 2, 5, 16, 33] {
            let (x, w) = gauss_legendre(n);
            let sum: f64 = w.iter().sum();
            assert!((sum - 2.0).abs() < 1e-14, "n={n}");
            // x^(2n-2) integrates to 2/(2n-1)
            let deg = 2 * n - 2;
            let q: f64 = x.iter().zip(&w).map(|(a, b)| b * a.powi(deg as i32)).sum();
            assert!((q - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn nodes_sorted_and_symmetric() {
        let (x, _) = gauss_legendre(20);
        assert!(x.windows(2).all(|w| w[0] < w[1]));
        for i in 0..10 {
            assert!((x[i] + x[19 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn rule_validation() {
        assert!(QuadratureRule::new(vec![0.0, 1.0], vec![1.0], 1.0).is_err());
        assert!(QuadratureRule::new(vec![0.5, 0.2], vec![1.0, 1.0], 1.0).is_err());
        assert!(QuadratureRule::new(vec![0.5], vec![f64::NAN], 1.0).is_err());
        assert!(QuadratureRule::new(vec![0.5], vec![1.0], 0.0).is_err());
    }

    #[test]
    fn graded_rule_handles_endpoint_power() {
        let rule = QuadratureRule::graded(4.0, 12, 1e-16, 2.0, 0.25).unwrap();
        // ∫_0^4 r^{-1/2} dr = 4
        let v = rule.integrate(|r| r.powf(-0.5));
        assert!((v - 4.0).abs() < 1e-6, "{v}");
        let v = rule.integrate(|r| (-r).exp());
        assert!((v - (1.0 - (-4.0f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn unit_rule_maps_to_interval() {
        let rule = QuadratureRule::gauss_legendre_unit(8);
        let v = rule.integrate_on(1.0, 3.0, |x| x * x);
        assert!((v - 26.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_peak() {
        let f = |x: f64| 1e-3 / ((x - 0.3).powi(2) + 1e-6);
        let exact = ((0.7f64) / 1e-3).atan() + (0.3f64 / 1e-3).atan();
        let (v, _) = integrate_adaptive(f, 0.0, 1.0, &[], 0.0, 1e-12, 2000).unwrap();
        assert!((v - exact).abs() < 1e-10 * exact, "{v} vs {exact}");
    }

    #[test]
    fn adaptive_reports_failure() {
        let r = integrate_adaptive(|x: f64| 1.0 / x, 0.0, 1.0, &[], 0.0, 1e-12, 10);
        assert!(matches!(r, Err(Error::Convergence(_))));
    }
}
