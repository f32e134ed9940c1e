//! Diagonal generators `A e_n = -μ_n e_n`, their semigroup and the
//! fractional solution operators
//!
//! ```text
//! T_α(t) e_n = E_α(-μ_n t^α) e_n,      S_α(t) e_n = E_{α,α}(-μ_n t^α) e_n.
//! ```

use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::QuadratureRule;
use crate::specfun::{mainardi_integral, mittag_leffler, MlParams};

/// Coefficients of a state vector in the eigenbasis.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModeVector(Vec<f64>);

impl ModeVector {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if let Some(i) = coefficients.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("mode coefficient {i} is not finite")));
        }
        Ok(Self(coefficients))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ModeVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for ModeVector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

/// Growth bound `‖T(t)‖ ≤ M e^{ωt}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthBound {
    pub m: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralOperator {
    eigenvalues: Vec<f64>,
    growth: GrowthBound,
}

impl SpectralOperator {
    /// `eigenvalues` are the decay rates `μ_n ≥ 0`.
    pub fn new(eigenvalues: Vec<f64>, growth: GrowthBound) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::invalid("operator needs at least one mode"));
        }
        if let Some(mu) = eigenvalues.iter().find(|m| !(**m >= 0.0 && m.is_finite())) {
            return Err(Error::invalid(format!("decay rate {mu} must be finite and >= 0")));
        }
        if !(growth.m >= 1.0 && growth.omega >= 0.0 && growth.m.is_finite() && growth.omega.is_finite()) {
            return Err(Error::invalid(format!(
                "growth bound needs M >= 1, omega >= 0, got M = {}, omega = {}",
                growth.m, growth.omega
            )));
        }
        Ok(Self { eigenvalues, growth })
    }

    /// Contractive operator (`M = 1`, `ω = 0`).
    pub fn contractive(eigenvalues: Vec<f64>) -> Result<Self> {
        Self::new(eigenvalues, GrowthBound { m: 1.0, omega: 0.0 })
    }

    /// Dirichlet Laplacian on `[0, π]` truncated to `n` modes: `μ_k = k²`.
    pub fn dirichlet_laplacian(n: usize) -> Result<Self> {
        Self::contractive((1..=n).map(|k| (k * k) as f64).collect())
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn n_modes(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn growth(&self) -> GrowthBound {
        self.growth
    }

    fn check(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.n_modes() {
            return Err(Error::invalid(format!("vector has {} modes, operator has {}", v.len(), self.n_modes())));
        }
        Ok(())
    }
}

/// Fractional order `α ∈ (1/2, 1]`.
pub fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.5 && alpha <= 1.0) {
        return Err(Error::domain(format!("fractional order alpha = {alpha} must lie in (1/2, 1]")));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("time t = {t} must be finite and >= 0")));
    }
    Ok(())
}

/// `E_α(-μ t^α)`, the multiplier of `T_α(t)` on a mode with decay rate `μ`.
pub fn t_alpha_multiplier(alpha: f64, mu: f64, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(1.0);
    }
    mittag_leffler(MlParams::classical(alpha)?, -mu * t.powf(alpha))
}

/// `E_{α,α}(-μ t^α)`, the multiplier of `S_α(t)`.
pub fn s_alpha_multiplier(alpha: f64, mu: f64, t: f64) -> Result<f64> {
    mittag_leffler(MlParams::diagonal(alpha)?, -mu * t.powf(alpha))
}

pub fn semigroup_apply(a: &SpectralOperator, t: f64, v: &ModeVector) -> Result<ModeVector> {
    check_time(t)?;
    a.check(v)?;
    Ok(ModeVector(a.eigenvalues.iter().zip(v.iter()).map(|(mu, x)| (-mu * t).exp() * x).collect()))
}

pub fn t_alpha_apply(alpha: f64, a: &SpectralOperator, t: f64, v: &ModeVector) -> Result<ModeVector> {
    check_alpha(alpha)?;
    check_time(t)?;
    a.check(v)?;
    let out = a
        .eigenvalues
        .iter()
        .zip(v.iter())
        .map(|(&mu, x)| Ok(t_alpha_multiplier(alpha, mu, t)? * x))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModeVector(out))
}

pub fn s_alpha_apply(alpha: f64, a: &SpectralOperator, t: f64, v: &ModeVector) -> Result<ModeVector> {
    check_alpha(alpha)?;
    check_time(t)?;
    a.check(v)?;
    let out = a
        .eigenvalues
        .iter()
        .zip(v.iter())
        .map(|(&mu, x)| Ok(s_alpha_multiplier(alpha, mu, t)? * x))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModeVector(out))
}

/// Direct quadrature of the subordination integrals on one mode:
/// `∫ M_α(r) e^{-μ t^α r} dr` or, when `weighted`, `∫ α r M_α(r) e^{-μ t^α r} dr`.
pub fn subordination_oracle(alpha: f64, mu: f64, t: f64, weighted: bool, rule: &QuadratureRule) -> Result<f64> {
    if !(mu >= 0.0) {
        return Err(Error::domain(format!("decay rate {mu} must be >= 0")));
    }
    check_time(t)?;
    let lambda = mu * t.powf(alpha);
    if weighted {
        mainardi_integral(alpha, rule, |r| alpha * r * (-lambda * r).exp())
    } else {
        mainardi_integral(alpha, rule, |r| (-lambda * r).exp())
    }
}

/// `(max_n E_{α,α}(-μ_n t^α), M E_{α,α}(ω t^α))`: the operator norm of
/// `S_α(t)` and its growth-bound majorant.
pub fn s_alpha_norm_bound(alpha: f64, a: &SpectralOperator, t: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    check_time(t)?;
    let mut observed = f64::NEG_INFINITY;
    for &mu in &a.eigenvalues {
        observed = observed.max(s_alpha_multiplier(alpha, mu, t)?.abs());
    }
    let GrowthBound { m, omega } = a.growth;
    let bound = m * mittag_leffler(MlParams::diagonal(alpha)?, omega * t.powf(alpha))?;
    Ok((observed, bound))
}
