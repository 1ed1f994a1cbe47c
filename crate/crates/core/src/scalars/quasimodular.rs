use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::eisenstein::eisenstein;
use super::qseries::QSeries;
use super::scalar::fmt_rational;

/// Exponents `(a, b, c)` of `E₂^a E₄^b E₆^c`.
pub type Exponents = (u32, u32, u32);

/// `Σ_k λ^k P_k(E₂, E₄, E₆)` with rational polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuasiPoly {
    terms: BTreeMap<i32, BTreeMap<Exponents, BigRational>>,
}

impl QuasiPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, Exponents, &BigRational)> {
        self.terms
            .iter()
            .flat_map(|(k, p)| p.iter().map(move |(e, c)| (*k, *e, c)))
    }

    /// Re-expands as a q-series through `q^nq`.
    pub fn to_qseries(&self, nq: usize) -> QSeries {
        let e = [2, 4, 6].map(|k| eisenstein(k, nq).expect("supported weight"));
        let mut out = QSeries::zero().with_order(nq);
        for (k, (a, b, c), coef) in self.terms() {
            let mut m = QSeries::rational(coef.clone()).shift_lambda(k).with_order(nq);
            for (base, n) in e.iter().zip([a, b, c]) {
                for _ in 0..n {
                    m = &m * base;
                }
            }
            out = &out + &m;
        }
        out
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, (a, b, c), coef) in self.terms() {
            if !first {
                write!(f, " {} ", if coef.is_negative() { "-" } else { "+" })?;
            } else if coef.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let mut factors = Vec::new();
            if !coef.abs().is_one() {
                factors.push(fmt_rational(&coef.abs()));
            }
            if k != 0 {
                factors.push(format!("lambda^{k}"));
            }
            for (name, n) in [("E2", a), ("E4", b), ("E6", c)] {
                match n {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    n => factors.push(format!("{name}^{n}")),
                }
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Monomials `E₂^a E₄^b E₆^c` of weight exactly `w`.
fn monomials_of_weight(w: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for c in 0..=w / 6 {
        for b in 0..=(w - 6 * c) / 4 {
            let rest = w - 6 * c - 4 * b;
            if rest.is_multiple_of(2) {
                out.push((rest / 2, b, c));
            }
        }
    }
    out
}

/// Solves `A x = b` exactly; `None` when inconsistent or underdetermined.
fn solve_exact(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for x in &mut a[r][c..] {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        let pivot = a[r].clone();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for (x, p) in a[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
                let t = &f * &b[r];
                b[i] -= t;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if pivot_cols.len() < cols || b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(b[..cols].to_vec())
}

/// Tries to write each λ-part of `s` as a polynomial in `E₂, E₄, E₆`.
///
/// Each part is matched against homogeneous weights `0, 2, ..., max_weight`;
/// a fit is only accepted when the known coefficients strictly outnumber the
/// unknowns, so agreement is a genuine check rather than interpolation.
pub fn fit_quasimodular(s: &QSeries, max_weight: u32) -> Option<QuasiPoly> {
    let nq = s.order()?;
    let e = [2, 4, 6].map(|k| eisenstein(k, nq).expect("supported weight"));
    let mut terms = BTreeMap::new();
    for k in s.lambda_exponents() {
        let target = s.lambda_part(k);
        let rhs: Vec<BigRational> = (0..=nq)
            .map(|i| target.get(i).cloned().unwrap_or_else(BigRational::zero))
            .collect();
        let mut found = None;
        for w in (0..=max_weight).step_by(2) {
            let monos = monomials_of_weight(w);
            if monos.len() > nq {
                break;
            }
            let cols: Vec<Vec<BigRational>> = monos
                .iter()
                .map(|&(a, b, c)| {
                    let mut m = QSeries::one().with_order(nq);
                    for (base, n) in e.iter().zip([a, b, c]) {
                        for _ in 0..n {
                            m = &m * base;
                        }
                    }
                    let p = m.lambda_part(0);
                    (0..=nq)
                        .map(|i| p.get(i).cloned().unwrap_or_else(BigRational::zero))
                        .collect()
                })
                .collect();
            let matrix = (0..=nq)
                .map(|i| cols.iter().map(|col| col[i].clone()).collect())
                .collect();
            if let Some(x) = solve_exact(matrix, rhs.clone()) {
                found = Some(
                    monos
                        .into_iter()
                        .zip(x)
                        .filter(|(_, c)| !c.is_zero())
                        .collect::<BTreeMap<_, _>>(),
                );
                break;
            }
        }
        terms.insert(k, found?);
    }
    Some(QuasiPoly { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    #[test]
    fn counts_monomials() {
        assert_eq!(monomials_of_weight(0).len(), 1);
        assert_eq!(monomials_of_weight(8).len(), 4);
        assert_eq!(monomials_of_weight(12).len(), 7);
    }

    #[test]
    fn recovers_ramanujan_e2() {
        let e2 = eisenstein(2, 12).unwrap();
        let fit = fit_quasimodular(&e2.partial(), 12).unwrap();
        assert_eq!(fit.to_string(), "-1/12*E4 + 1/12*E2^2");
        assert_eq!(fit.to_qseries(12), e2.partial());
    }

    #[test]
    fn mixed_lambda_parts() {
        let e4 = eisenstein(4, 10).unwrap();
        let s = &e4.mul_scalar(&Scalar::lambda(4)) + &QSeries::lambda(-2).with_order(10);
        let fit = fit_quasimodular(&s, 12).unwrap();
        assert_eq!(fit.to_string(), "lambda^-2 + lambda^4*E4");
    }

    #[test]
    fn rejects_non_quasimodular() {
        let c: Vec<BigRational> = (0..=10).map(|n| BigRational::from_integer(n.into())).collect();
        let s = QSeries::from_rationals(0, &c, Some(10));
        assert!(fit_quasimodular(&s, 8).is_none());
    }
}
