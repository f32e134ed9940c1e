//! Run configuration. Seeds and tolerances are stored as decimal strings so
//! that a config file round-trips bit-exactly.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use sdfe_core::fbm::{GeneratorKind, HurstParameter, TimeGrid};
use sdfe_core::heat::{self, HeatConfig};
use sdfe_core::hypotheses::{assess, HypothesisInputs, HypothesisReport};
use sdfe_core::operators::{GrowthBound, SpectralOperator};
use sdfe_core::solver::{ConstantHistory, ConstantNoise, Drift, Forcing, InitialIterate, LinearDelayDrift, Problem, ZeroDrift};

use crate::error::{HarnessError, Result};

/// Environment variable that overrides `output.directory`.
pub const OUTPUT_DIR_ENV: &str = "SDFE_OUTPUT_DIR";

mod decimal {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let text = String::deserialize(d)?;
        text.trim().parse().map_err(|e| D::Error::custom(format!("bad decimal {text:?}: {e}")))
    }
}

mod decimal_u64 {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let text = String::deserialize(d)?;
        text.trim().parse().map_err(|e| D::Error::custom(format!("bad integer {text:?}: {e}")))
    }
}

/// Drift catalog for raw spectral problems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralDrift {
    Zero,
    /// `k · x(t - r)`.
    ScaledIdentity { k: f64 },
    /// `f ≡ values`.
    Constant { values: Vec<f64> },
}

fn default_growth() -> GrowthBound {
    GrowthBound { m: 1.0, omega: 0.0 }
}

/// An equation given directly in mode coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralConfig {
    pub alpha: f64,
    pub hurst: f64,
    /// `μ_n`, the generator acts as `A e_n = -μ_n e_n`.
    pub decay_rates: Vec<f64>,
    #[serde(default = "default_growth")]
    pub growth: GrowthBound,
    pub horizon: f64,
    pub delay: f64,
    /// `λ_n`; defaults to `n^{-2}`.
    #[serde(default)]
    pub noise_eigenvalues: Option<Vec<f64>>,
    pub drift: SpectralDrift,
    /// Constant noise coefficients `h_n`; zero when empty.
    #[serde(default)]
    pub noise: Vec<f64>,
    /// Constant history on `[-r, 0]`; zero when empty.
    #[serde(default)]
    pub initial: Vec<f64>,
    /// `p`; defaults to `1/(2α-1) + 1`.
    #[serde(default)]
    pub integrability_exponent: Option<f64>,
}

impl SpectralConfig {
    fn n_modes(&self) -> usize {
        self.decay_rates.len()
    }

    fn padded(&self, v: &[f64], what: &str) -> Result<Vec<f64>> {
        let n = self.n_modes();
        if v.len() > n {
            return Err(HarnessError::config(format!("{what} has {} entries for {n} modes", v.len())));
        }
        let mut out = v.to_vec();
        out.resize(n, 0.0);
        Ok(out)
    }

    fn eigenvalues(&self) -> Result<Vec<f64>> {
        match &self.noise_eigenvalues {
            Some(l) if l.len() != self.n_modes() => Err(HarnessError::config(format!(
                "{} noise eigenvalues for {} modes",
                l.len(),
                self.n_modes()
            ))),
            Some(l) => Ok(l.clone()),
            None => Ok((1..=self.n_modes()).map(|n| 1.0 / (n * n) as f64).collect()),
        }
    }

    fn p(&self) -> f64 {
        self.integrability_exponent.unwrap_or(1.0 / (2.0 * self.alpha - 1.0) + 1.0)
    }

    fn drift(&self) -> Result<(Arc<dyn Drift>, f64)> {
        Ok(match &self.drift {
            SpectralDrift::Zero => (Arc::new(ZeroDrift), 0.0),
            SpectralDrift::ScaledIdentity { k } => (Arc::new(LinearDelayDrift { k: *k }), k * k),
            SpectralDrift::Constant { values } => {
                let c = self.padded(values, "constant drift")?;
                (Arc::new(Forcing(move |_t: f64, out: &mut [f64]| out.copy_from_slice(&c))), 0.0)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemSection {
    Heat(HeatConfig),
    Spectral(SpectralConfig),
}

impl ProblemSection {
    pub fn horizon(&self) -> f64 {
        match self {
            Self::Heat(h) => h.horizon,
            Self::Spectral(s) => s.horizon,
        }
    }

    pub fn delay(&self) -> f64 {
        match self {
            Self::Heat(h) => h.delay,
            Self::Spectral(s) => s.delay,
        }
    }

    pub fn alpha(&self) -> f64 {
        match self {
            Self::Heat(h) => h.alpha,
            Self::Spectral(s) => s.alpha,
        }
    }

    /// Hypothesis report; errors only on malformed input.
    pub fn hypotheses(&self) -> Result<HypothesisReport> {
        match self {
            Self::Heat(h) => Ok(heat::validate_hypotheses(h)?),
            Self::Spectral(s) => {
                let (drift, c_f) = s.drift()?;
                let noise = ConstantNoise(s.padded(&s.noise, "noise")?);
                Ok(assess(&HypothesisInputs {
                    alpha: s.alpha,
                    p: s.p(),
                    horizon: s.horizon,
                    delay: s.delay,
                    eigenvalues: &s.eigenvalues()?,
                    noise: &noise,
                    drift: drift.as_ref(),
                    lipschitz_hint: c_f,
                })?)
            }
        }
    }

    /// Builds the problem, refusing hard hypothesis violations.
    pub fn build(&self) -> Result<(Problem, HypothesisReport)> {
        let report = self.hypotheses()?;
        if let Some(e) = report.hard_violation() {
            return Err(HarnessError::Hypothesis {
                reason: "h1_violation",
                detail: e.to_string(),
            });
        }
        let problem = match self {
            Self::Heat(h) => heat::build_problem(h)?,
            Self::Spectral(s) => {
                let (drift, c_f) = s.drift()?;
                Problem::builder(
                    s.alpha,
                    HurstParameter::new(s.hurst)?,
                    SpectralOperator::new(s.decay_rates.clone(), s.growth)?,
                    s.horizon,
                    s.delay,
                )
                .initial(ConstantHistory(s.padded(&s.initial, "initial")?))
                .noise(ConstantNoise(s.padded(&s.noise, "noise")?))
                .eigenvalues(s.eigenvalues()?)
                .shared_drift(drift)
                .lipschitz_hint(c_f)
                .integrability_exponent(s.p())
                .build()?
            }
        };
        Ok((problem, report))
    }

    /// Output points on `[0, π]` for physical-space statistics.
    pub fn probes(&self) -> Option<Vec<f64>> {
        match self {
            Self::Heat(h) => Some(h.output_grid()),
            Self::Spectral(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(with = "decimal")]
    pub dt: f64,
}

fn default_workers() -> usize {
    1
}

fn default_generator() -> GeneratorKind {
    GeneratorKind::Circulant
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSection {
    pub n_paths: usize,
    #[serde(with = "decimal_u64")]
    pub master_seed: u64,
    /// Not part of the config hash: outputs do not depend on it.
    #[serde(default = "default_workers")]
    pub worker_count: usize,
    #[serde(default = "default_generator")]
    pub generator: GeneratorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    #[serde(with = "decimal")]
    pub tolerance: f64,
    pub max_iter: usize,
    pub initial_iterate: InitialIterate,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            tolerance: sdfe_core::solver::DEFAULT_TOLERANCE,
            max_iter: sdfe_core::solver::DEFAULT_MAX_ITER,
            initial_iterate: InitialIterate::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    /// Not part of the config hash.
    pub directory: PathBuf,
    pub formats: Vec<Format>,
    /// Also write every trajectory as `paths/path_NNNNN.csv`.
    pub write_paths: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("sdfe-output"),
            formats: vec![Format::Csv],
            write_paths: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specfun,
    Fbm,
    Stochint,
    Operators,
    Solver,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Fbm => "fbm",
            Suite::Stochint => "stochint",
            Suite::Operators => "operators",
            Suite::Solver => "solver",
            Suite::All => "all",
        }
    }
}

/// Tolerances of the verification checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    #[serde(with = "decimal")]
    pub moment: f64,
    #[serde(with = "decimal")]
    pub laplace: f64,
    #[serde(with = "decimal")]
    pub mass: f64,
    #[serde(with = "decimal")]
    pub operator_quadrature: f64,
    #[serde(with = "decimal")]
    pub reduction: f64,
    /// Monte Carlo checks pass within this many standard errors.
    #[serde(with = "decimal")]
    pub standard_errors: f64,
    /// Significance level of the two-sample KS tests.
    #[serde(with = "decimal")]
    pub ks_level: f64,
    /// Allowed distance of the constant-integrand ratio from `1/(2H)`.
    #[serde(with = "decimal")]
    pub sharpness: f64,
    #[serde(with = "decimal")]
    pub relaxation: f64,
    #[serde(with = "decimal")]
    pub pure_initial: f64,
    #[serde(with = "decimal")]
    pub picard: f64,
    pub picard_iterations: usize,
    /// Multiple of `dt` allowed between the fractional and classical solvers at `α = 1`.
    #[serde(with = "decimal")]
    pub classical_dt_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            moment: 1e-6,
            laplace: 1e-6,
            mass: 1e-8,
            operator_quadrature: 1e-5,
            reduction: 1e-12,
            standard_errors: 3.0,
            ks_level: 0.01,
            sharpness: 0.1,
            relaxation: 5e-3,
            pure_initial: 1e-6,
            picard: 1e-10,
            picard_iterations: 20,
            classical_dt_factor: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifySection {
    pub suite: Suite,
    #[serde(with = "decimal_u64")]
    pub seed: u64,
    pub fbm_paths: usize,
    pub fbm_steps: usize,
    pub stochint_paths: usize,
    pub stochint_steps: usize,
    pub classical_paths: usize,
    pub tolerances: Tolerances,
}

impl Default for VerifySection {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            seed: 2024,
            fbm_paths: 2000,
            fbm_steps: 512,
            stochint_paths: 5000,
            stochint_steps: 128,
            classical_paths: 100,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemSection,
    pub grid: GridSection,
    pub ensemble: EnsembleSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub verify: VerifySection,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| HarnessError::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks the grid, ensemble and solver sections.
    pub fn validate(&self) -> Result<()> {
        let dt = self.grid.dt;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(HarnessError::config(format!("dt = {dt} must be positive")));
        }
        steps_for(self.problem.delay(), dt, "delay")?;
        steps_for(self.problem.horizon(), dt, "horizon")?;
        if self.ensemble.n_paths == 0 {
            return Err(HarnessError::config("n_paths must be at least 1"));
        }
        if self.ensemble.worker_count == 0 {
            return Err(HarnessError::config("worker_count must be at least 1"));
        }
        if !(self.solver.tolerance > 0.0) || self.solver.max_iter == 0 {
            return Err(HarnessError::config("solver tolerance and max_iter must be positive"));
        }
        if self.output.formats.is_empty() {
            return Err(HarnessError::config("at least one output format is required"));
        }
        Ok(())
    }

    /// Number of steps on `[0, horizon]`.
    pub fn n_steps(&self) -> Result<usize> {
        steps_for(self.problem.horizon(), self.grid.dt, "horizon")
    }

    pub fn time_grid(&self) -> Result<TimeGrid> {
        Ok(TimeGrid::from_horizon(self.problem.horizon(), self.n_steps()?)?)
    }

    /// SHA-256 of the canonical JSON with scheduling and location fields cleared.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.ensemble.worker_count = 0;
        canonical.output.directory = PathBuf::new();
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        hex::encode(Sha256::digest(bytes))
    }

    /// `SDFE_OUTPUT_DIR` if set, else `output.directory`.
    pub fn output_dir(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => self.output.directory.clone(),
        }
    }
}

/// `length / dt` when it is an integer up to rounding.
pub fn steps_for(length: f64, dt: f64, what: &str) -> Result<usize> {
    let steps = (length / dt).round();
    if steps < 1.0 || (steps * dt - length).abs() > 1e-9 * length {
        return Err(HarnessError::config(format!("dt = {dt} does not divide {what} = {length}")));
    }
    Ok(steps as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunConfig {
        RunConfig {
            problem: ProblemSection::Heat(HeatConfig::default()),
            grid: GridSection { dt: 1.0 / 64.0 },
            ensemble: EnsembleSection {
                n_paths: 4,
                master_seed: u64::MAX - 7,
                worker_count: 2,
                generator: GeneratorKind::Circulant,
            },
            solver: SolverSection {
                tolerance: 0.1 + 0.2,
                ..Default::default()
            },
            output: OutputSection::default(),
            verify: VerifySection::default(),
        }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let cfg = sample();
        let text = cfg.to_json();
        let back = RunConfig::from_json(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.solver.tolerance.to_bits(), (0.1f64 + 0.2).to_bits());
        assert_eq!(back.ensemble.master_seed, u64::MAX - 7);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn hash_ignores_workers_and_directory() {
        let a = sample();
        let mut b = a.clone();
        b.ensemble.worker_count = 8;
        b.output.directory = PathBuf::from("/elsewhere");
        assert_eq!(a.hash(), b.hash());
        b.ensemble.master_seed = 1;
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn rejects_indivisible_grid() {
        let mut cfg = sample();
        cfg.grid.dt = 0.3;
        assert!(matches!(cfg.validate(), Err(HarnessError::Config(_))));
        cfg.grid.dt = 1.0 / 64.0;
        cfg.ensemble.n_paths = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn seeds_must_be_strings() {
        let text = sample().to_json().replace("\"18446744073709551608\"", "18446744073709551608");
        assert!(RunConfig::from_json(&text).is_err());
    }
}
