//! Evaluation of exact series from the kernel at numeric `(z, q)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use supercurve::scalars::{QSeries, Scalar};
use supercurve::superfield::{Mono, SuperField};

use crate::grass::GrassNum;

/// `λ = √(2π)·e^{iπ/4}`, so `λ² = 2πi`.
pub fn lambda() -> Complex64 {
    Complex64::from_polar((2.0 * PI).sqrt(), PI / 4.0)
}

fn scalar(s: &Scalar) -> Complex64 {
    let l = lambda();
    let (re, im) = s.eval_with(|k| {
        let p = l.powi(k);
        (p.re, p.im)
    });
    Complex64::new(re, im)
}

/// `Σ cₙ qⁿ` over the known coefficients.
pub fn eval_qseries(s: &QSeries, q: Complex64) -> Complex64 {
    let mut acc = Complex64::default();
    let mut qn = Complex64::new(1.0, 0.0);
    for c in s.coeffs() {
        if !c.is_zero() {
            acc += scalar(&c) * qn;
        }
        qn *= q;
    }
    acc
}

/// Evaluates every Grassmann component of `f` at `z`.
pub fn eval_field(f: &SuperField, z: Complex64, tau: Complex64) -> GrassNum {
    let q = (Complex64::i() * 2.0 * PI * tau).exp();
    let mut out = GrassNum::ZERO;
    for (n, g) in f.terms() {
        let zn = z.powi(n);
        for (i, m) in Mono::ALL.into_iter().enumerate() {
            let s = g.get(m);
            if !s.is_zero() {
                out.c[i] += eval_qseries(s, q) * zn;
            }
        }
    }
    out
}
