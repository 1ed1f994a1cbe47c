use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ratvec::RatVec;
use super::scalar::{fmt_rational, Scalar};
use crate::error::{Error, Result};
use crate::verdict::{Discrepancy, Verdict};

/// Outcome of comparing two truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesEq {
    /// All jointly known coefficients agree; `None` means both sides are exact.
    EqualToOrder(Option<usize>),
    /// First disagreement, ordered by q-exponent then λ-exponent.
    Unequal { q_exp: usize, lambda_exp: i32 },
    /// Nothing disagrees, but fewer coefficients are known than were asked for.
    InsufficientAccuracy { known: usize, required: usize },
}

/// Truncated power series in `q` over [`Scalar`].
///
/// Stored λ-graded: `Σ_k λ^k · P_k(q)` with each `P_k` a rational vector.
/// This is the same ring as `Scalar[[q]]` but keeps multiplication sparse
/// in λ. Coefficients of `q^0..=order` are known; `order == None` marks an
/// exact polynomial in `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    parts: BTreeMap<i32, RatVec>,
    order: Option<usize>,
}

fn min_order(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl QSeries {
    pub fn zero() -> Self {
        QSeries {
            parts: BTreeMap::new(),
            order: None,
        }
    }

    pub fn one() -> Self {
        Self::from_scalar(&Scalar::one())
    }

    /// Exact constant series.
    pub fn from_scalar(s: &Scalar) -> Self {
        let parts = s.terms().map(|(k, c)| (k, RatVec::constant(c))).collect();
        QSeries { parts, order: None }
    }

    pub fn lambda(k: i32) -> Self {
        Self::from_scalar(&Scalar::lambda(k))
    }

    pub fn rational(c: BigRational) -> Self {
        Self::from_scalar(&Scalar::rational(c))
    }

    /// `Σ coeffs[n] q^n` known through `q^order`; extra coefficients are dropped.
    pub fn from_coeffs(coeffs: &[Scalar], order: Option<usize>) -> Self {
        let len = order.map_or(coeffs.len(), |o| (o + 1).min(coeffs.len()));
        let mut by_lambda: BTreeMap<i32, Vec<BigRational>> = BTreeMap::new();
        for (n, s) in coeffs[..len].iter().enumerate() {
            for (k, c) in s.terms() {
                let v = by_lambda
                    .entry(k)
                    .or_insert_with(|| vec![BigRational::zero(); len]);
                v[n] = c.clone();
            }
        }
        let parts = by_lambda
            .into_iter()
            .map(|(k, v)| (k, RatVec::from_rationals(&v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        QSeries { parts, order }
    }

    /// `λ^k · Σ coeffs[n] q^n`.
    pub fn from_rationals(k: i32, coeffs: &[BigRational], order: Option<usize>) -> Self {
        let v = RatVec::from_rationals(coeffs);
        let mut parts = BTreeMap::new();
        if !v.is_zero() {
            parts.insert(k, v);
        }
        QSeries { parts, order }.truncated_to(order)
    }

    /// Last known q-exponent, `None` when exact.
    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn coeff(&self, n: usize) -> Scalar {
        let mut s = Scalar::zero();
        for (k, v) in &self.parts {
            s.add_term(*k, &v.get(n));
        }
        s
    }

    /// Known coefficients `q^0..=order` (or up to the last nonzero when exact).
    pub fn coeffs(&self) -> Vec<Scalar> {
        let len = match self.order {
            Some(o) => o + 1,
            None => self.parts.values().map(RatVec::len).max().unwrap_or(0),
        };
        (0..len).map(|n| self.coeff(n)).collect()
    }

    pub fn lambda_exponents(&self) -> impl Iterator<Item = i32> + '_ {
        self.parts.keys().copied()
    }

    /// q-coefficients of the `λ^k` part.
    pub fn lambda_part(&self, k: i32) -> Vec<BigRational> {
        match self.parts.get(&k) {
            Some(v) => (0..v.len()).map(|i| v.get(i)).collect(),
            None => Vec::new(),
        }
    }

    /// Drops everything past `q^order`.
    pub fn truncated_to(mut self, order: Option<usize>) -> Self {
        let order = min_order(self.order, order);
        if let Some(o) = order {
            self.parts = std::mem::take(&mut self.parts)
                .into_iter()
                .map(|(k, v)| (k, v.truncated(o + 1)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        self.order = order;
        self
    }

    pub fn with_order(self, order: usize) -> Self {
        self.truncated_to(Some(order))
    }

    pub fn mul_scalar(&self, s: &Scalar) -> QSeries {
        let mut parts: BTreeMap<i32, RatVec> = BTreeMap::new();
        for (ks, c) in s.terms() {
            for (k, v) in &self.parts {
                accumulate(&mut parts, k + ks, v.scale(c));
            }
        }
        QSeries {
            parts,
            order: self.order,
        }
    }

    pub fn mul_rational(&self, c: &BigRational) -> QSeries {
        QSeries {
            parts: self
                .parts
                .iter()
                .map(|(k, v)| (*k, v.scale(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            order: self.order,
        }
    }

    /// Multiplies every coefficient by `λ^k`.
    pub fn shift_lambda(&self, k: i32) -> QSeries {
        QSeries {
            parts: self.parts.iter().map(|(j, v)| (j + k, v.clone())).collect(),
            order: self.order,
        }
    }

    /// Ramanujan's operator `q d/dq`.
    pub fn partial(&self) -> QSeries {
        QSeries {
            parts: self
                .parts
                .iter()
                .map(|(k, v)| (*k, v.q_derivative()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            order: self.order,
        }
    }

    /// Multiplicative inverse; the `q^0` coefficient must be a nonzero λ-monomial.
    pub fn inv(&self) -> Result<QSeries> {
        let c0 = self.coeff(0);
        let w0 = c0.inv()?;
        // Fast path: a single λ-part inverts inside one graded component.
        if self.parts.len() == 1 {
            let (&k, v) = self.parts.iter().next().expect("one part");
            if self.order.is_none() && v.len() > 1 {
                return Err(Error::InsufficientAccuracy(format!(
                    "inverse of the exact polynomial {self} is an infinite series"
                )));
            }
            let u = v.scale(&v.get(0).recip());
            let inv = invert_unit(&u, self.order);
            let mut parts = BTreeMap::new();
            parts.insert(-k, inv.scale(&v.get(0).recip()));
            return Ok(QSeries {
                parts,
                order: self.order,
            });
        }
        let a = self.coeffs();
        let len = match self.order {
            Some(o) => o + 1,
            None => {
                return Err(Error::InsufficientAccuracy(format!(
                    "inverse of the exact polynomial {self} is an infinite series"
                )))
            }
        };
        let mut w: Vec<Scalar> = Vec::with_capacity(len);
        w.push(w0.clone());
        for n in 1..len {
            let mut acc = Scalar::zero();
            for i in 1..=n {
                if let Some(ai) = a.get(i) {
                    acc = &acc + &(ai * &w[n - i]);
                }
            }
            w.push(-(&w0 * &acc));
        }
        Ok(QSeries::from_coeffs(&w, self.order))
    }

    /// Compares two series on their jointly known coefficients.
    pub fn compare(&self, other: &QSeries, required: usize) -> SeriesEq {
        let diff = self - other;
        if let Some((n, k)) = diff.first_nonzero() {
            return SeriesEq::Unequal {
                q_exp: n,
                lambda_exp: k,
            };
        }
        match diff.order {
            Some(o) if o < required => SeriesEq::InsufficientAccuracy {
                known: o + 1,
                required: required + 1,
            },
            o => SeriesEq::EqualToOrder(o),
        }
    }

    /// [`compare`](Self::compare) as a [`Verdict`]; nothing is required beyond `q^0`.
    pub fn check_eq(&self, other: &QSeries) -> Verdict {
        let diff = self - other;
        match diff.first_nonzero() {
            Some((q, k)) => Verdict::Fails(Discrepancy {
                z_exp: None,
                monomial: None,
                q_exp: q,
                lambda_exp: k,
                value: diff.coeff(q).to_string(),
            }),
            None => Verdict::Holds {
                z_prec: None,
                q_prec: diff.order,
            },
        }
    }

    /// `(q_exp, λ_exp)` of the lowest nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, i32)> {
        self.parts
            .iter()
            .filter_map(|(k, v)| v.valuation().map(|n| (n, *k)))
            .min()
    }

    /// `k ↦ [p/q strings]` for serialization.
    pub fn to_rational_strings(&self) -> BTreeMap<i32, Vec<String>> {
        self.parts
            .iter()
            .map(|(k, v)| (*k, (0..v.len()).map(|i| fmt_rational(&v.get(i))).collect()))
            .collect()
    }
}

/// Inverse of a rational vector with constant term 1, to `order`.
fn invert_unit(u: &RatVec, order: Option<usize>) -> RatVec {
    let len = match order {
        Some(o) => o + 1,
        None => return RatVec::constant(&BigRational::one()),
    };
    let a: Vec<BigRational> = (0..len).map(|i| u.get(i)).collect();
    let mut w = vec![BigRational::zero(); len];
    w[0] = BigRational::one();
    for n in 1..len {
        let mut acc = BigRational::zero();
        for i in 1..=n {
            if !a[i].is_zero() {
                acc += &a[i] * &w[n - i];
            }
        }
        w[n] = -acc;
    }
    RatVec::from_rationals(&w)
}

fn accumulate(parts: &mut BTreeMap<i32, RatVec>, k: i32, v: RatVec) {
    if v.is_zero() {
        return;
    }
    match parts.get_mut(&k) {
        Some(slot) => {
            let sum = slot.add(&v);
            if sum.is_zero() {
                parts.remove(&k);
            } else {
                *slot = sum;
            }
        }
        None => {
            parts.insert(k, v);
        }
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let mut parts = self.parts.clone();
        for (k, v) in &rhs.parts {
            accumulate(&mut parts, *k, v.clone());
        }
        QSeries {
            parts,
            order: self.order,
        }
        .truncated_to(rhs.order)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            parts: self.parts.iter().map(|(k, v)| (*k, v.neg())).collect(),
            order: self.order,
        }
    }
}

// Exponents add under multiplication.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = min_order(self.order, rhs.order);
        let max_len = order.map(|o| o + 1);
        let mut parts = BTreeMap::new();
        for (ka, a) in &self.parts {
            for (kb, b) in &rhs.parts {
                accumulate(&mut parts, ka + kb, a.mul_trunc(b, max_len));
            }
        }
        QSeries { parts, order }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                n => write!(f, "({c})*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(o) = self.order {
            write!(f, " + O(q^{})", o + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(k: i32, v: &[i64], order: Option<usize>) -> QSeries {
        let c: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        QSeries::from_rationals(k, &c, order)
    }

    #[test]
    fn difference_of_squares() {
        let a = ints(0, &[1, 1], None);
        let b = ints(0, &[1, -1], None);
        assert_eq!(&a * &b, ints(0, &[1, 0, -1], None));
    }

    #[test]
    fn identity_is_neutral() {
        let a = ints(3, &[2, -5, 7], Some(4));
        assert_eq!(&a * &QSeries::one(), a);
    }

    #[test]
    fn geometric_series() {
        let a = ints(0, &[1, -1], Some(5));
        let inv = a.inv().unwrap();
        assert_eq!(inv, ints(0, &[1, 1, 1, 1, 1, 1], Some(5)));
    }

    #[test]
    fn monomial_inverse() {
        assert_eq!(QSeries::lambda(2).inv().unwrap(), QSeries::lambda(-2));
    }

    #[test]
    fn zero_constant_term_is_rejected() {
        let a = ints(0, &[0, 1, 1], Some(4));
        assert!(matches!(a.inv(), Err(Error::NonUnitConstantTerm(_))));
    }

    #[test]
    fn multi_lambda_inverse() {
        // (1 + λ² q)^{-1} = 1 - λ² q + λ⁴ q² - ...
        let a = &QSeries::one().with_order(3) + &ints(2, &[0, 1], Some(3));
        let inv = a.inv().unwrap();
        assert_eq!(inv.coeff(2), Scalar::lambda(4));
        assert_eq!(inv.coeff(3), -Scalar::lambda(6));
        assert_eq!((&a * &inv).compare(&QSeries::one(), 3), SeriesEq::EqualToOrder(Some(3)));
    }

    #[test]
    fn accuracy_is_min_of_operands() {
        let a = ints(0, &[1, 2, 3], Some(6));
        let b = ints(0, &[1, 1], Some(2));
        assert_eq!((&a * &b).order(), Some(2));
        assert_eq!((&a + &b).order(), Some(2));
    }

    #[test]
    fn compare_reports_insufficient_accuracy() {
        let a = ints(0, &[1, 2], Some(1));
        assert_eq!(
            a.compare(&a, 4),
            SeriesEq::InsufficientAccuracy { known: 2, required: 5 }
        );
        let b = ints(0, &[1, 3], Some(1));
        assert_eq!(a.compare(&b, 0), SeriesEq::Unequal { q_exp: 1, lambda_exp: 0 });
    }
}
