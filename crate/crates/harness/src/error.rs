use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("hypothesis check failed ({reason}): {detail}")]
    Hypothesis { reason: &'static str, detail: String },

    #[error("path {path} (seed {seed}) did not converge: {source}")]
    NonConvergence {
        path: usize,
        seed: u64,
        #[source]
        source: sdfe_core::Error,
    },

    #[error("{failed} of {total} verification checks failed")]
    VerifyFailed { failed: usize, total: usize },

    #[error(transparent)]
    Core(#[from] sdfe_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl HarnessError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 for rejected input, 3 for non-convergence, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Hypothesis { .. } => 2,
            Self::NonConvergence { .. } => 3,
            _ => 1,
        }
    }

    /// Machine-readable reason for the failure.
    pub fn reason(&self) -> &'static str {
        match self {
            Self::Config(_) => "invalid_config",
            Self::Hypothesis { reason, .. } => reason,
            Self::NonConvergence { .. } => "non_convergence",
            Self::VerifyFailed { .. } => "verification_failed",
            Self::Core(_) => "numerical_error",
            Self::Io { .. } | Self::Json(_) | Self::Csv(_) => "io_error",
            Self::Pool(_) => "worker_pool",
        }
    }
}
