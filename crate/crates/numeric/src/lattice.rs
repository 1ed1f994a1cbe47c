//! The Weierstrass ζ summed directly over the lattice, row by row.
//!
//! Row `m` of `Σ' [1/(z−ω) + 1/ω + z/ω²]` sums in closed form to
//! `π cot π(z − mτ) + π cot πmτ + zπ²/sin²(πmτ)`; row 0 contributes
//! `π cot πz − 1/z + zπ²/3`. Rows decay like `|q|^{|m|}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{NumError, Result};
use crate::functions::{cot, csc2};
use crate::NumConfig;

pub fn lattice_zeta(z: Complex64, cfg: &NumConfig) -> Result<Complex64> {
    cfg.validate()?;
    let tau = cfg.tau;
    let mut sum = PI * cot(PI * z) + z * PI * PI / 3.0;
    for m in 1..=cfg.cutoff {
        let mut row = Complex64::default();
        for s in [1.0, -1.0] {
            let mt = tau * (m as f64 * s);
            row += PI * cot(PI * (z - mt)) + PI * cot(PI * mt) + z * PI * PI * csc2(PI * mt);
        }
        sum += row;
        if row.norm() < cfg.tol * 1e-3 && m > 2 {
            return Ok(sum);
        }
    }
    Err(NumError::ConvergenceFailure {
        terms: cfg.cutoff,
        estimate: f64::NAN,
        tol: cfg.tol,
    })
}

/// `(η₁, η₂)` as the quasi-periods `ζ(z+1) − ζ(z)` and `ζ(z+τ) − ζ(z)`.
pub fn quasi_periods(z: Complex64, cfg: &NumConfig) -> Result<(Complex64, Complex64)> {
    let base = lattice_zeta(z, cfg)?;
    Ok((
        lattice_zeta(z + 1.0, cfg)? - base,
        lattice_zeta(z + cfg.tau, cfg)? - base,
    ))
}
