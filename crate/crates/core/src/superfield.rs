//! Laurent series in `z` over `QSeries ⊗ Λ[θ, φ]` and the derivations acting on them.
//!
//! Precision is tracked in both variables: `z_prec` is the first unknown
//! z-exponent and `q_prec` the last known q-exponent. `None` means exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{QSeries, Scalar};
use crate::verdict::{Discrepancy, Verdict};

/// Grassmann monomials in normal order (θ before φ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mono {
    One,
    Theta,
    Phi,
    ThetaPhi,
}

impl Mono {
    pub const ALL: [Mono; 4] = [Mono::One, Mono::Theta, Mono::Phi, Mono::ThetaPhi];

    fn index(self) -> usize {
        self as usize
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Mono::Theta | Mono::Phi)
    }

    pub fn label(self) -> &'static str {
        match self {
            Mono::One => "1",
            Mono::Theta => "theta",
            Mono::Phi => "phi",
            Mono::ThetaPhi => "thetaphi",
        }
    }

    pub fn from_label(s: &str) -> Option<Mono> {
        Mono::ALL.into_iter().find(|m| m.label() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// `c₁ + c_θ θ + c_φ φ + c_θφ θφ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassCoeff {
    c: [QSeries; 4],
}

impl GrassCoeff {
    pub fn zero() -> Self {
        GrassCoeff {
            c: std::array::from_fn(|_| QSeries::zero()),
        }
    }

    pub fn new(one: QSeries, theta: QSeries, phi: QSeries, theta_phi: QSeries) -> Self {
        GrassCoeff {
            c: [one, theta, phi, theta_phi],
        }
    }

    pub fn mono(m: Mono, s: QSeries) -> Self {
        let mut g = Self::zero();
        g.c[m.index()] = s;
        g
    }

    pub fn get(&self, m: Mono) -> &QSeries {
        &self.c[m.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(QSeries::is_zero)
    }

    fn map(&self, f: impl Fn(&QSeries) -> QSeries) -> Self {
        GrassCoeff {
            c: std::array::from_fn(|i| f(&self.c[i])),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&QSeries, &QSeries) -> QSeries) -> Self {
        GrassCoeff {
            c: std::array::from_fn(|i| f(&self.c[i], &other.c[i])),
        }
    }

    pub fn mul(&self, b: &Self) -> Self {
        let [a1, at, ap, atp] = &self.c;
        let [b1, bt, bp, btp] = &b.c;
        let prod = |x: &QSeries, y: &QSeries| -> Option<QSeries> {
            if x.is_zero() || y.is_zero() {
                None
            } else {
                Some(x * y)
            }
        };
        let sum = |xs: Vec<Option<QSeries>>, signs: &[bool]| -> QSeries {
            let mut acc = QSeries::zero();
            for (x, &neg) in xs.into_iter().zip(signs) {
                if let Some(x) = x {
                    acc = if neg { &acc - &x } else { &acc + &x };
                }
            }
            acc
        };
        GrassCoeff {
            c: [
                sum(vec![prod(a1, b1)], &[false]),
                sum(vec![prod(a1, bt), prod(at, b1)], &[false, false]),
                sum(vec![prod(a1, bp), prod(ap, b1)], &[false, false]),
                sum(
                    vec![prod(a1, btp), prod(atp, b1), prod(at, bp), prod(ap, bt)],
                    &[false, false, false, true],
                ),
            ],
        }
    }

    /// Inverse when the body is a unit: `(a + n)⁻¹ = a⁻¹ − a⁻² n`, since `n² = 0`.
    pub fn inv(&self) -> Result<Self> {
        let a = self.c[0].inv().map_err(|e| match e {
            Error::NonUnitConstantTerm(s) => Error::NonUnitLeading(s),
            other => other,
        })?;
        let a2 = &a * &a;
        Ok(GrassCoeff {
            c: [
                a,
                -(&a2 * &self.c[1]),
                -(&a2 * &self.c[2]),
                -(&a2 * &self.c[3]),
            ],
        })
    }

    /// Negates the odd components.
    pub fn parity_flip(&self) -> Self {
        GrassCoeff {
            c: [
                self.c[0].clone(),
                -&self.c[1],
                -&self.c[2],
                self.c[3].clone(),
            ],
        }
    }
}

/// Minimum of optional bounds where `None` stands for +∞.
fn min_prec(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn min_q(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `Σ_n z^n · c_n` with a finite principal part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperField {
    terms: BTreeMap<i32, GrassCoeff>,
    z_prec: Option<i32>,
    q_prec: Option<usize>,
}

impl SuperField {
    pub fn zero() -> Self {
        SuperField {
            terms: BTreeMap::new(),
            z_prec: None,
            q_prec: None,
        }
    }

    pub fn one() -> Self {
        Self::constant(QSeries::one())
    }

    pub fn from_terms(
        terms: BTreeMap<i32, GrassCoeff>,
        z_prec: Option<i32>,
        q_prec: Option<usize>,
    ) -> Self {
        SuperField {
            terms,
            z_prec,
            q_prec,
        }
        .normalized()
    }

    /// A z-independent, Grassmann-constant field.
    pub fn constant(s: QSeries) -> Self {
        let q = s.order();
        Self::term(0, Mono::One, s).with_q_prec(q)
    }

    pub fn scalar(s: &Scalar) -> Self {
        Self::constant(QSeries::from_scalar(s))
    }

    /// `s · z^n · m`, exact in z.
    pub fn term(n: i32, m: Mono, s: QSeries) -> Self {
        let q = s.order();
        let mut terms = BTreeMap::new();
        terms.insert(n, GrassCoeff::mono(m, s));
        Self::from_terms(terms, None, q)
    }

    pub fn z_pow(n: i32) -> Self {
        Self::term(n, Mono::One, QSeries::one())
    }

    pub fn theta() -> Self {
        Self::term(0, Mono::Theta, QSeries::one())
    }

    pub fn phi() -> Self {
        Self::term(0, Mono::Phi, QSeries::one())
    }

    pub fn theta_phi() -> Self {
        Self::term(0, Mono::ThetaPhi, QSeries::one())
    }

    fn normalized(mut self) -> Self {
        let (zp, qp) = (self.z_prec, self.q_prec);
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .filter(|(n, _)| zp.is_none_or(|p| *n < p))
            .map(|(n, g)| (n, g.map(|s| s.clone().truncated_to(qp))))
            .filter(|(_, g)| !g.is_zero())
            .collect();
        self
    }

    /// Marks everything from `z^p` on as unknown.
    pub fn with_z_prec(mut self, p: Option<i32>) -> Self {
        self.z_prec = min_prec(self.z_prec, p);
        self.normalized()
    }

    pub fn with_q_prec(mut self, q: Option<usize>) -> Self {
        self.q_prec = min_q(self.q_prec, q);
        self.normalized()
    }

    /// First unknown z-exponent; `None` when exact.
    pub fn z_prec(&self) -> Option<i32> {
        self.z_prec
    }

    /// Last known q-exponent; `None` when exact.
    pub fn q_prec(&self) -> Option<usize> {
        self.q_prec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest z-exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Valuation for precision bookkeeping: an inexact zero counts as `z_prec`.
    fn effective_valuation(&self) -> Option<i32> {
        self.valuation().or(self.z_prec)
    }

    pub fn coeff(&self, n: i32) -> GrassCoeff {
        self.terms.get(&n).cloned().unwrap_or_else(GrassCoeff::zero)
    }

    pub fn component(&self, n: i32, m: Mono) -> QSeries {
        self.terms
            .get(&n)
            .map(|g| g.get(m).clone())
            .unwrap_or_else(QSeries::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GrassCoeff)> {
        self.terms.iter().map(|(n, g)| (*n, g))
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for g in self.terms.values() {
            for m in Mono::ALL {
                if !g.get(m).is_zero() {
                    if m.is_odd() {
                        odd = true;
                    } else {
                        even = true;
                    }
                }
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// The part along one Grassmann monomial, as a body-only field.
    pub fn part(&self, m: Mono) -> SuperField {
        let terms = self
            .terms
            .iter()
            .map(|(n, g)| (*n, GrassCoeff::mono(Mono::One, g.get(m).clone())))
            .collect();
        Self::from_terms(terms, self.z_prec, self.q_prec)
    }

    /// Keeps only the listed monomials.
    pub fn restrict(&self, keep: &[Mono]) -> SuperField {
        let terms = self
            .terms
            .iter()
            .map(|(n, g)| {
                let mut h = GrassCoeff::zero();
                for &m in keep {
                    h.c[m.index()] = g.get(m).clone();
                }
                (*n, h)
            })
            .collect();
        Self::from_terms(terms, self.z_prec, self.q_prec)
    }

    /// `f(z, −θ, −φ)`: negates the odd components.
    pub fn parity_flip(&self) -> SuperField {
        self.map_coeffs(GrassCoeff::parity_flip)
    }

    fn map_coeffs(&self, f: impl Fn(&GrassCoeff) -> GrassCoeff) -> SuperField {
        let terms = self.terms.iter().map(|(n, g)| (*n, f(g))).collect();
        Self::from_terms(terms, self.z_prec, self.q_prec)
    }

    pub fn mul_qseries(&self, s: &QSeries) -> SuperField {
        self.map_coeffs(|g| g.map(|c| c * s))
            .with_q_prec(s.order())
    }

    pub fn mul_scalar(&self, s: &Scalar) -> SuperField {
        self.map_coeffs(|g| g.map(|c| c.mul_scalar(s)))
    }

    /// Multiplies by `λ^k`.
    pub fn shift_lambda(&self, k: i32) -> SuperField {
        self.map_coeffs(|g| g.map(|c| c.shift_lambda(k)))
    }

    /// Multiplies by `z^k`.
    pub fn shift_z(&self, k: i32) -> SuperField {
        let terms = self.terms.iter().map(|(n, g)| (n + k, g.clone())).collect();
        Self::from_terms(terms, self.z_prec.map(|p| p + k), self.q_prec)
    }

    pub fn d_z(&self) -> SuperField {
        let terms = self
            .terms
            .iter()
            .filter(|(n, _)| **n != 0)
            .map(|(n, g)| (n - 1, g.map(|c| c.mul_scalar(&Scalar::integer(*n as i64)))))
            .collect();
        Self::from_terms(terms, self.z_prec.map(|p| p - 1), self.q_prec)
    }

    /// Left derivative in θ.
    pub fn d_theta(&self) -> SuperField {
        self.map_coeffs(|g| {
            GrassCoeff::new(g.c[1].clone(), QSeries::zero(), g.c[3].clone(), QSeries::zero())
        })
    }

    /// Left derivative in φ; `∂φ(θφ) = −θ`.
    pub fn d_phi(&self) -> SuperField {
        self.map_coeffs(|g| {
            GrassCoeff::new(g.c[2].clone(), -&g.c[3], QSeries::zero(), QSeries::zero())
        })
    }

    /// `∂τ = λ² q d/dq` on every coefficient.
    pub fn d_tau(&self) -> SuperField {
        self.map_coeffs(|g| g.map(|c| c.partial().shift_lambda(2)))
    }

    /// `θ · f`.
    pub fn theta_times(&self) -> SuperField {
        self.map_coeffs(|g| {
            GrassCoeff::new(QSeries::zero(), g.c[0].clone(), QSeries::zero(), g.c[2].clone())
        })
    }

    /// `φ · f`.
    pub fn phi_times(&self) -> SuperField {
        self.map_coeffs(|g| {
            GrassCoeff::new(QSeries::zero(), QSeries::zero(), g.c[0].clone(), -&g.c[1])
        })
    }

    /// The superconformal derivation `D = ∂θ + θ∂z`.
    #[allow(non_snake_case)]
    pub fn D(&self) -> SuperField {
        &self.d_theta() + &self.d_z().theta_times()
    }

    pub fn pow(&self, n: u32) -> SuperField {
        let mut out = SuperField::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Multiplicative inverse. Exact inputs whose inverse is an infinite
    /// series are truncated at `z^limit`.
    pub fn inv_to(&self, limit: Option<i32>) -> Result<SuperField> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::NonUnitLeading("zero has no inverse".into()))?;
        let w0 = self.terms[&v].inv()?;
        // self = z^v · u with u_0 invertible; u is known through z^{rel-1}.
        let rel = self.z_prec.map(|p| p - v);
        let tail_len = self.terms.keys().next_back().map_or(0, |n| n - v);
        let rel = match (rel, limit) {
            (Some(r), l) => Some(l.map_or(r, |l| r.min(l + v + 1))),
            (None, _) if tail_len == 0 => None,
            (None, Some(l)) => Some(l + v + 1),
            (None, None) => {
                return Err(Error::InsufficientAccuracy(
                    "inverse of an exact series with a tail needs a truncation limit".into(),
                ))
            }
        };
        let mut w: BTreeMap<i32, GrassCoeff> = BTreeMap::new();
        w.insert(0, w0.clone());
        if let Some(r) = rel {
            for n in 1..r.max(1) {
                let mut acc = GrassCoeff::zero();
                for (i, ui) in self.terms.range(v + 1..=v + n) {
                    if let Some(wj) = w.get(&(n - (i - v))) {
                        acc = acc.zip(&ui.mul(wj), |a, b| a + b);
                    }
                }
                w.insert(n, w0.mul(&acc).map(|c| -c));
            }
        }
        let terms = w.into_iter().map(|(n, g)| (n - v, g)).collect();
        Ok(Self::from_terms(terms, rel.map(|r| r - v), self.q_prec))
    }

    pub fn inv(&self) -> Result<SuperField> {
        self.inv_to(None)
    }

    /// Compares with `other` on all jointly known coefficients.
    pub fn check_eq(&self, other: &SuperField) -> Verdict {
        let floor = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => 0,
        };
        (self - other).check_zero_from(floor)
    }

    /// `Holds` when every known coefficient vanishes; `InsufficientAccuracy`
    /// when nothing at or above `z^floor` is known.
    pub fn check_zero_from(&self, floor: i32) -> Verdict {
        for (n, g) in &self.terms {
            for m in Mono::ALL {
                if let Some((q, k)) = g.get(m).first_nonzero() {
                    return Verdict::Fails(Discrepancy {
                        z_exp: Some(*n),
                        monomial: Some(m.label()),
                        q_exp: q,
                        lambda_exp: k,
                        value: g.get(m).coeff(q).to_string(),
                    });
                }
            }
        }
        match self.z_prec {
            Some(p) if p <= floor => Verdict::InsufficientAccuracy(format!(
                "no coefficient at or above z^{floor} is known"
            )),
            z_prec => Verdict::Holds {
                z_prec,
                q_prec: self.q_prec,
            },
        }
    }

    pub fn check_zero(&self) -> Verdict {
        self.check_zero_from(self.valuation().unwrap_or(0))
    }
}

impl Add for &SuperField {
    type Output = SuperField;
    fn add(self, rhs: &SuperField) -> SuperField {
        let mut terms = self.terms.clone();
        for (n, g) in &rhs.terms {
            let slot = terms.entry(*n).or_insert_with(GrassCoeff::zero);
            *slot = slot.zip(g, |a, b| a + b);
        }
        SuperField::from_terms(
            terms,
            min_prec(self.z_prec, rhs.z_prec),
            min_q(self.q_prec, rhs.q_prec),
        )
    }
}

impl Neg for &SuperField {
    type Output = SuperField;
    fn neg(self) -> SuperField {
        self.map_coeffs(|g| g.map(|c| -c))
    }
}

impl Sub for &SuperField {
    type Output = SuperField;
    fn sub(self, rhs: &SuperField) -> SuperField {
        self + &(-rhs)
    }
}

// Exponents add under multiplication.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &SuperField {
    type Output = SuperField;
    fn mul(self, rhs: &SuperField) -> SuperField {
        let q_prec = min_q(self.q_prec, rhs.q_prec);
        let (Some(vf), Some(vg)) = (self.effective_valuation(), rhs.effective_valuation()) else {
            return SuperField {
                terms: BTreeMap::new(),
                z_prec: None,
                q_prec,
            };
        };
        let z_prec = min_prec(self.z_prec.map(|p| p + vg), rhs.z_prec.map(|p| p + vf));
        let mut terms: BTreeMap<i32, GrassCoeff> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                let n = i + j;
                if z_prec.is_some_and(|p| n >= p) {
                    continue;
                }
                let prod = a.mul(b);
                let slot = terms.entry(n).or_insert_with(GrassCoeff::zero);
                *slot = slot.zip(&prod, |x, y| x + y);
            }
        }
        SuperField::from_terms(terms, z_prec, q_prec)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SuperField {
            type Output = SuperField;
            fn $m(self, rhs: SuperField) -> SuperField {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SuperField {
    type Output = SuperField;
    fn neg(self) -> SuperField {
        -&self
    }
}

impl fmt::Display for SuperField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, g) in &self.terms {
            for m in Mono::ALL {
                let c = g.get(m);
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "[{c}]*z^{n}")?;
                if m != Mono::One {
                    write!(f, "*{}", m.label())?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(p) = self.z_prec {
            write!(f, " + O(z^{p})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmann_signs() {
        let t = SuperField::theta();
        let p = SuperField::phi();
        assert_eq!(&t * &p, SuperField::theta_phi());
        assert_eq!(&p * &t, -SuperField::theta_phi());
        assert!((&t * &t).is_zero());
    }

    #[test]
    fn expands_product() {
        let f = &SuperField::z_pow(-1) + &SuperField::theta();
        let g = &SuperField::z_pow(1) + &SuperField::phi();
        let expected = &(&(&SuperField::one() + &SuperField::phi().shift_z(-1))
            + &SuperField::theta().shift_z(1))
            + &SuperField::theta_phi();
        assert_eq!(&f * &g, expected);
    }

    #[test]
    fn inverse_of_z_and_nilpotent() {
        assert_eq!(SuperField::z_pow(1).inv().unwrap(), SuperField::z_pow(-1));
        let u = &SuperField::one() + &SuperField::theta_phi();
        assert_eq!(u.inv().unwrap(), &SuperField::one() - &SuperField::theta_phi());
    }

    #[test]
    fn inverse_of_nilpotent_leading_fails() {
        let f = &SuperField::theta().shift_z(-2) + &SuperField::one();
        assert!(matches!(f.inv(), Err(Error::NonUnitLeading(_))));
    }

    #[test]
    fn geometric_inverse_is_truncated() {
        let f = &SuperField::one() - &SuperField::z_pow(1);
        assert!(f.inv().is_err());
        let g = f.inv_to(Some(5)).unwrap();
        assert_eq!(g.z_prec(), Some(6));
        assert!((&(&f * &g) - &SuperField::one()).check_zero().holds());
    }

    #[test]
    fn grassmann_derivatives() {
        assert_eq!(SuperField::theta_phi().d_theta(), SuperField::phi());
        assert_eq!(SuperField::theta_phi().d_phi(), -SuperField::theta());
        assert_eq!(SuperField::theta().D(), SuperField::one());
        assert_eq!(SuperField::z_pow(1).D(), SuperField::theta());
    }

    #[test]
    fn d_squared_is_d_z() {
        let f = &SuperField::z_pow(-2) + &SuperField::theta().shift_z(1);
        assert_eq!(f.D().D(), f.d_z());
    }

    #[test]
    fn product_precision() {
        // (z^-2 + O(z^3)) * (z + O(z^4)) is known below z^2.
        let a = SuperField::z_pow(-2).with_z_prec(Some(3));
        let b = SuperField::z_pow(1).with_z_prec(Some(4));
        assert_eq!((&a * &b).z_prec(), Some(2));
    }

    #[test]
    fn insufficient_accuracy_is_reported() {
        let a = SuperField::z_pow(3).with_z_prec(Some(1));
        assert!(matches!(
            a.check_zero_from(2),
            Verdict::InsufficientAccuracy(_)
        ));
    }
}
