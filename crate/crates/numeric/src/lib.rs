//! Floating-point evaluation of the Weierstrass data on the lattice `Z + Zτ`,
//! Grassmann-number arithmetic, and numeric checks of periodicity, the
//! Legendre relation, invariance under the group action and the periods.

pub mod checks;
pub mod error;
pub mod functions;
pub mod grass;
pub mod lattice;
pub mod symbolic;

pub use checks::{
    duality_check, eval_basis_function, invariance_check, legendre_check, period_quadrature, quasi_periodicity_check,
    InvName, NumericCheck, Periods,
};
pub use error::{NumError, Result};
pub use functions::{num_eval, Evaluator, NumName, Values};
pub use grass::GrassNum;
pub use symbolic::{eval_field, eval_qseries, lambda};

use num_complex::Complex64;

/// Evaluation parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumConfig {
    pub tau: Complex64,
    /// Maximal number of q-series or lattice-row terms.
    pub cutoff: usize,
    /// Gauss-Legendre nodes per segment.
    pub nodes: usize,
    pub tol: f64,
}

impl Default for NumConfig {
    fn default() -> Self {
        NumConfig {
            tau: Complex64::new(0.3, 1.2),
            cutoff: 400,
            nodes: 64,
            tol: 1e-9,
        }
    }
}

impl NumConfig {
    pub fn with_tau(tau: Complex64) -> Self {
        NumConfig {
            tau,
            ..Self::default()
        }
    }

    pub fn q(&self) -> Complex64 {
        (Complex64::i() * 2.0 * std::f64::consts::PI * self.tau).exp()
    }

    pub fn validate(&self) -> Result<()> {
        if self.tau.im <= 0.0 || !self.tau.is_finite() {
            return Err(NumError::InvalidConfig(format!(
                "Im tau must be positive, got {}",
                self.tau
            )));
        }
        if self.nodes == 0 || self.cutoff == 0 || self.tol <= 0.0 {
            return Err(NumError::InvalidConfig(
                "nodes, cutoff and tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}
