//! Complex numbers extended by the Grassmann generators θ, φ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// `c₁ + c_θ θ + c_φ φ + c_θφ θφ`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GrassNum {
    pub c: [Complex64; 4],
}

impl GrassNum {
    pub const ZERO: GrassNum = GrassNum {
        c: [Complex64::new(0.0, 0.0); 4],
    };

    pub fn new(one: Complex64, theta: Complex64, phi: Complex64, theta_phi: Complex64) -> Self {
        GrassNum {
            c: [one, theta, phi, theta_phi],
        }
    }

    pub fn scalar(a: Complex64) -> Self {
        Self::new(a, 0.0.into(), 0.0.into(), 0.0.into())
    }

    pub fn theta() -> Self {
        Self::new(0.0.into(), 1.0.into(), 0.0.into(), 0.0.into())
    }

    pub fn phi() -> Self {
        Self::new(0.0.into(), 0.0.into(), 1.0.into(), 0.0.into())
    }

    pub fn theta_phi() -> Self {
        Self::new(0.0.into(), 0.0.into(), 0.0.into(), 1.0.into())
    }

    pub fn body(&self) -> Complex64 {
        self.c[0]
    }

    pub fn scale(&self, a: Complex64) -> Self {
        GrassNum {
            c: self.c.map(|x| x * a),
        }
    }

    /// `F(self)` for an analytic `F` with `F(body) = f`, `F′(body) = df`.
    /// Exact because the nilpotent part of an even element squares to zero.
    pub fn compose(&self, f: Complex64, df: Complex64) -> Self {
        assert!(
            self.c[1] == Complex64::default() && self.c[2] == Complex64::default(),
            "argument must be even"
        );
        Self::new(f, 0.0.into(), 0.0.into(), df * self.c[3])
    }

    /// Largest componentwise distance.
    pub fn distance(&self, other: &GrassNum) -> f64 {
        (0..4).map(|i| (self.c[i] - other.c[i]).norm()).fold(0.0, f64::max)
    }
}

impl Add for GrassNum {
    type Output = GrassNum;
    fn add(self, rhs: GrassNum) -> GrassNum {
        GrassNum {
            c: std::array::from_fn(|i| self.c[i] + rhs.c[i]),
        }
    }
}

impl Sub for GrassNum {
    type Output = GrassNum;
    fn sub(self, rhs: GrassNum) -> GrassNum {
        self + (-rhs)
    }
}

impl Neg for GrassNum {
    type Output = GrassNum;
    fn neg(self) -> GrassNum {
        GrassNum { c: self.c.map(|x| -x) }
    }
}

impl Mul for GrassNum {
    type Output = GrassNum;
    fn mul(self, b: GrassNum) -> GrassNum {
        let a = self.c;
        let b = b.c;
        GrassNum::new(
            a[0] * b[0],
            a[0] * b[1] + a[1] * b[0],
            a[0] * b[2] + a[2] * b[0],
            a[0] * b[3] + a[3] * b[0] + a[1] * b[2] - a[2] * b[1],
        )
    }
}

impl fmt::Display for GrassNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({})*theta + ({})*phi + ({})*thetaphi",
            self.c[0], self.c[1], self.c[2], self.c[3]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommuting_generators() {
        let (t, p) = (GrassNum::theta(), GrassNum::phi());
        assert_eq!(t * p, GrassNum::theta_phi());
        assert_eq!(p * t, -GrassNum::theta_phi());
        assert_eq!(t * t, GrassNum::ZERO);
    }
}
