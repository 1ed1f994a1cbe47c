//! Exact symbolic kernel for the genus-1 supercurve family with odd spin structure.
//!
//! Everything is computed over the rationals with a formal `λ` standing for
//! `(2πi)^{1/2}`. Series in `q = e^{2πiτ}` and in the chart coordinate `z`
//! carry explicit truncation orders, so an identity either holds on every
//! known coefficient, fails at a reported coefficient, or cannot be decided.

pub mod cohomology;
pub mod curve;
pub mod error;
pub mod forms;
pub mod geometry;
pub mod scalars;
pub mod suite;
pub mod superfield;
pub mod verdict;
pub mod weierstrass;

pub use error::{Error, Result};

/// Truncation orders shared by every construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Highest z-exponent computed for the Weierstrass expansions.
    pub nz: i32,
    /// Highest q-exponent computed for the Eisenstein series.
    pub nq: usize,
    /// Deepest basis element `DⁿR`, `xⁿ`, ... used by decompositions.
    pub depth: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            nz: 20,
            nq: 16,
            depth: 8,
        }
    }
}
