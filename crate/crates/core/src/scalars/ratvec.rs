//! Dense rational vectors sharing one denominator.
//!
//! This is the workhorse behind [`QSeries`](super::QSeries): every λ-graded
//! part of a q-series is one `RatVec` of q-coefficients. Keeping a single
//! denominator per vector turns the Cauchy product into integer
//! convolution, with one gcd pass at the end instead of one per term.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `num[i] / den` for `i` in `0..num.len()`.
///
/// Invariants: `den > 0`, `gcd(den, num...) == 1`, no trailing zero
/// numerators. The zero vector is `num == []`, `den == 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct RatVec {
    num: Vec<BigInt>,
    den: BigInt,
}

impl RatVec {
    pub fn zero() -> Self {
        RatVec {
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn from_parts(num: Vec<BigInt>, den: BigInt) -> Self {
        let mut v = RatVec { num, den };
        v.normalize();
        v
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(num, den)
    }

    pub fn constant(c: &BigRational) -> Self {
        Self::from_parts(vec![c.numer().clone()], c.denom().clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Number of stored coefficients (index of the last nonzero plus one).
    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn get(&self, i: usize) -> BigRational {
        match self.num.get(i) {
            Some(n) => BigRational::new(n.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(|n| n.is_zero()) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for n in &mut self.num {
                *n = -&*n;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for n in &mut self.num {
                *n /= &g;
            }
        }
    }

    pub fn truncated(&self, len: usize) -> Self {
        if self.num.len() <= len {
            return self.clone();
        }
        Self::from_parts(self.num[..len].to_vec(), self.den.clone())
    }

    pub fn neg(&self) -> Self {
        RatVec {
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let len = self.num.len().max(other.num.len());
        if self.den == other.den {
            let num = (0..len)
                .map(|i| match (self.num.get(i), other.num.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect();
            return Self::from_parts(num, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let fa = &other.den / &g;
        let fb = &self.den / &g;
        let num = (0..len)
            .map(|i| {
                let a = self.num.get(i).map(|a| a * &fa).unwrap_or_default();
                let b = other.num.get(i).map(|b| b * &fb).unwrap_or_default();
                a + b
            })
            .collect();
        Self::from_parts(num, &self.den * fa)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self::from_parts(
            self.num.iter().map(|n| n * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    /// Cauchy product keeping at most `max_len` coefficients.
    pub fn mul_trunc(&self, other: &Self, max_len: Option<usize>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let full = self.num.len() + other.num.len() - 1;
        let len = max_len.map_or(full, |m| m.min(full));
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.num.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_parts(out, &self.den * &other.den)
    }

    /// Multiplies the coefficient of `q^n` by `n`.
    pub fn q_derivative(&self) -> Self {
        Self::from_parts(
            self.num
                .iter()
                .enumerate()
                .map(|(n, c)| c * BigInt::from(n))
                .collect(),
            self.den.clone(),
        )
    }

    /// First index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.num.iter().position(|n| !n.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalizes_common_factor() {
        let v = RatVec::from_rationals(&[r(2, 4), r(1, 6), r(0, 1)]);
        assert_eq!(v.len(), 2);
        assert_eq!(v.get(0), r(1, 2));
        assert_eq!(v.get(1), r(1, 6));
        assert_eq!(v.den, BigInt::from(6));
    }

    #[test]
    fn add_cancels_to_zero() {
        let v = RatVec::from_rationals(&[r(1, 3), r(-5, 7)]);
        assert!(v.add(&v.neg()).is_zero());
    }

    #[test]
    fn truncated_product() {
        // (1 + q)(1 - q) = 1 - q^2
        let a = RatVec::from_rationals(&[r(1, 1), r(1, 1)]);
        let b = RatVec::from_rationals(&[r(1, 1), r(-1, 1)]);
        let p = a.mul_trunc(&b, None);
        assert_eq!(p.len(), 3);
        assert_eq!(p.get(1), r(0, 1));
        assert_eq!(p.get(2), r(-1, 1));
        assert_eq!(a.mul_trunc(&b, Some(2)).len(), 1);
    }
}
