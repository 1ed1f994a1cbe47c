use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::qseries::QSeries;
use super::scalar::Scalar;
use crate::error::{Error, Result};

fn sigma(power: u32, n: usize) -> BigInt {
    let mut s = BigInt::from(0);
    for d in 1..=n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(power);
        }
    }
    s
}

/// Normalized Eisenstein series `E_k` for `k ∈ {2, 4, 6}`, known through `q^nq`.
pub fn eisenstein(k: u32, nq: usize) -> Result<QSeries> {
    let (c, p) = match k {
        2 => (-24, 1),
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(Error::UnsupportedWeight(k)),
    };
    let mut coeffs = vec![BigRational::from_integer(1.into())];
    for n in 1..=nq {
        coeffs.push(BigRational::from_integer(sigma(p, n) * c));
    }
    Ok(QSeries::from_rationals(0, &coeffs, Some(nq)))
}

/// Quasimodular constants of the family, with their λ-weights made explicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedConstant {
    Eta1,
    G2,
    G3,
    Eta1Dot,
    G2Dot,
    G3Dot,
}

impl NamedConstant {
    pub const ALL: [NamedConstant; 6] = [
        NamedConstant::Eta1,
        NamedConstant::G2,
        NamedConstant::G3,
        NamedConstant::Eta1Dot,
        NamedConstant::G2Dot,
        NamedConstant::G3Dot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedConstant::Eta1 => "eta1",
            NamedConstant::G2 => "g2",
            NamedConstant::G3 => "g3",
            NamedConstant::Eta1Dot => "eta1dot",
            NamedConstant::G2Dot => "g2dot",
            NamedConstant::G3Dot => "g3dot",
        }
    }
}

impl fmt::Display for NamedConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedConstant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "eta1" | "η₁" | "η1" => NamedConstant::Eta1,
            "g2" | "g₂" => NamedConstant::G2,
            "g3" | "g₃" => NamedConstant::G3,
            "eta1dot" | "η̇₁" => NamedConstant::Eta1Dot,
            "g2dot" | "ġ₂" => NamedConstant::G2Dot,
            "g3dot" | "ġ₃" => NamedConstant::G3Dot,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }
}

/// `η₁ = −λ⁴E₂/12`, `g₂ = λ⁸E₄/12`, `g₃ = −λ¹²E₆/216`; dotted versions are `λ²∂` of these.
pub fn named_constant(c: NamedConstant, nq: usize) -> QSeries {
    let base = |k: u32, lam: i32, num: i64, den: i64| {
        eisenstein(k, nq)
            .expect("supported weight")
            .mul_scalar(&(&Scalar::ratio(num, den) * &Scalar::lambda(lam)))
    };
    match c {
        NamedConstant::Eta1 => base(2, 4, -1, 12),
        NamedConstant::G2 => base(4, 8, 1, 12),
        NamedConstant::G3 => base(6, 12, -1, 216),
        NamedConstant::Eta1Dot => named_constant(NamedConstant::Eta1, nq).partial().shift_lambda(2),
        NamedConstant::G2Dot => named_constant(NamedConstant::G2, nq).partial().shift_lambda(2),
        NamedConstant::G3Dot => named_constant(NamedConstant::G3, nq).partial().shift_lambda(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64], order: usize) -> QSeries {
        let c: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        QSeries::from_rationals(0, &c, Some(order))
    }

    #[test]
    fn e2_coefficients() {
        assert_eq!(eisenstein(2, 4).unwrap(), ints(&[1, -24, -72, -96, -168], 4));
    }

    #[test]
    fn e4_coefficients() {
        assert_eq!(eisenstein(4, 3).unwrap(), ints(&[1, 240, 2160, 6720], 3));
    }

    #[test]
    fn e6_coefficients() {
        assert_eq!(eisenstein(6, 2).unwrap(), ints(&[1, -504, -16632], 2));
    }

    #[test]
    fn e2_squared() {
        let e2 = eisenstein(2, 2).unwrap();
        assert_eq!(&e2 * &e2, ints(&[1, -48, 432], 2));
    }

    #[test]
    fn weight_eight_is_unsupported() {
        assert_eq!(eisenstein(8, 2), Err(Error::UnsupportedWeight(8)));
    }

    #[test]
    fn eta1_low_order() {
        let eta = named_constant(NamedConstant::Eta1, 1);
        assert_eq!(eta.coeff(0), &Scalar::ratio(-1, 12) * &Scalar::lambda(4));
        assert_eq!(eta.coeff(1), &Scalar::integer(2) * &Scalar::lambda(4));
    }

    #[test]
    fn g3_constant_and_eta1dot_vanishing_constant() {
        let g3 = named_constant(NamedConstant::G3, 0);
        assert_eq!(g3.coeff(0), &Scalar::ratio(-1, 216) * &Scalar::lambda(12));
        assert!(named_constant(NamedConstant::Eta1Dot, 0).is_zero());
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            "eta3".parse::<NamedConstant>(),
            Err(Error::UnknownName("eta3".into()))
        );
    }
}
