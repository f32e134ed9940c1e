use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Gamma function pole at x = {0}")]
    Pole(f64),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("outside the validated evaluation region: {0}")]
    Domain(String),

    #[error("numerical convergence failure: {0}")]
    Convergence(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("covariance matrix is not positive definite: leading minor of order {minor} failed (pivot {pivot:e})")]
    NotPositiveDefinite { minor: usize, pivot: f64 },

    #[error("circulant embedding has a negative eigenvalue {value:e} at index {index}")]
    Embedding { index: usize, value: f64 },

    #[error("time grid mismatch: {0}")]
    GridMismatch(String),

    #[error("hypothesis {name} violated: {detail}")]
    Hypothesis { name: &'static str, detail: String },

    #[error("Picard iteration did not reach tolerance in {iterations} iterations (last sup difference {last:e})", last = sup_differences.last().copied().unwrap_or(f64::NAN))]
    NonConvergence {
        iterations: usize,
        sup_differences: Vec<f64>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
