//! Numerics for stochastic delay fractional evolution equations driven by
//! fractional Brownian motion.

pub mod error;
pub mod export;
pub mod fbm;
pub mod heat;
pub mod hypotheses;
pub mod operators;
pub mod quad;
pub mod rng;
pub mod solver;
pub mod specfun;
pub mod stats;
pub mod stochint;

pub use error::{Error, Result};
