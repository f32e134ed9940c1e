//! Configuration-driven ensemble simulation, verification suites and
//! convergence studies on top of `sdfe-core`.

pub mod config;
pub mod convergence;
pub mod ensemble;
pub mod error;
pub mod output;
pub mod simulate;
pub mod verify;

pub use config::RunConfig;
pub use error::{HarnessError, Result};
