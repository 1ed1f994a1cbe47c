use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumError {
    #[error("{z} is a lattice point")]
    PoleAt { z: Complex64 },
    #[error("series did not reach tolerance {tol:e} within {terms} terms (estimate {estimate:e})")]
    ConvergenceFailure { terms: usize, estimate: f64, tol: f64 },
    #[error("segment from {from} to {to} passes within {distance:e} of a lattice point")]
    SegmentThroughPole { from: Complex64, to: Complex64, distance: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, NumError>;
