//! z-expansions of `℘`, `ζ`, `ζ₁` and their τ-derivatives with quasimodular coefficients.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalars::{eisenstein, named_constant, NamedConstant, QSeries, Scalar};
use crate::superfield::SuperField;
use crate::verdict::Check;
use crate::Config;

/// Names of the expansions held by [`Weierstrass`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WName {
    Wp,
    WpPrime,
    WpDot,
    WpDotPrime,
    Zeta,
    Zeta1,
    Zeta1Prime,
    Zeta1Dot,
    Zeta1DotPrime,
}

impl WName {
    pub const ALL: [WName; 9] = [
        WName::Wp,
        WName::WpPrime,
        WName::WpDot,
        WName::WpDotPrime,
        WName::Zeta,
        WName::Zeta1,
        WName::Zeta1Prime,
        WName::Zeta1Dot,
        WName::Zeta1DotPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WName::Wp => "wp",
            WName::WpPrime => "wp_prime",
            WName::WpDot => "wp_dot",
            WName::WpDotPrime => "wp_dot_prime",
            WName::Zeta => "zeta",
            WName::Zeta1 => "zeta1",
            WName::Zeta1Prime => "zeta1_prime",
            WName::Zeta1Dot => "zeta1_dot",
            WName::Zeta1DotPrime => "zeta1_dot_prime",
        }
    }
}

impl fmt::Display for WName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        WName::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// A named body-only expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WFunction {
    pub name: WName,
    pub value: SuperField,
}

/// Laurent coefficients `c_k` of `℘ = z⁻² + Σ_{k≥1} c_k z^{2k}` for `2k ≤ nz`.
///
/// `c₁ = g₂/20`, `c₂ = g₃/28`, and for `k ≥ 3`
/// `c_k = 3/((2k+3)(k−2)) Σ_{m=1}^{k−2} c_m c_{k−1−m}`.
fn wp_coefficients(g2: &QSeries, g3: &QSeries, nz: i32) -> Vec<QSeries> {
    let kmax = (nz.max(0) / 2) as usize;
    let mut c: Vec<QSeries> = Vec::with_capacity(kmax + 1);
    c.push(QSeries::zero());
    for k in 1..=kmax {
        let ck = match k {
            1 => g2.mul_scalar(&Scalar::ratio(1, 20)),
            2 => g3.mul_scalar(&Scalar::ratio(1, 28)),
            _ => {
                let mut acc = QSeries::zero();
                for m in 1..=k - 2 {
                    acc = &acc + &(&c[m] * &c[k - 1 - m]);
                }
                acc.mul_scalar(&Scalar::ratio(3, ((2 * k + 3) * (k - 2)) as i64))
            }
        };
        c.push(ck);
    }
    c
}

/// Every Weierstrass expansion and quasimodular constant at one truncation.
#[derive(Clone, Debug)]
pub struct Weierstrass {
    pub config: Config,
    pub e2: QSeries,
    pub e4: QSeries,
    pub e6: QSeries,
    pub eta1: QSeries,
    pub eta1_dot: QSeries,
    pub g2: QSeries,
    pub g3: QSeries,
    pub wp: SuperField,
    pub wp_prime: SuperField,
    pub wp_dot: SuperField,
    pub wp_dot_prime: SuperField,
    pub zeta: SuperField,
    pub zeta1: SuperField,
    pub zeta1_prime: SuperField,
    pub zeta1_dot: SuperField,
    pub zeta1_dot_prime: SuperField,
}

impl Weierstrass {
    pub fn new(config: Config) -> Self {
        let nq = config.nq;
        let nz = config.nz;
        let e = |k| eisenstein(k, nq).expect("supported weight");
        let g2 = named_constant(NamedConstant::G2, nq);
        let g3 = named_constant(NamedConstant::G3, nq);
        let eta1 = named_constant(NamedConstant::Eta1, nq);
        let eta1_dot = named_constant(NamedConstant::Eta1Dot, nq);

        let c = wp_coefficients(&g2, &g3, nz);
        let mut wp = SuperField::z_pow(-2).with_q_prec(Some(nq));
        // ζ is the odd antiderivative of −℘, so it is known one order further.
        let mut zeta = SuperField::z_pow(-1).with_q_prec(Some(nq));
        for (k, ck) in c.iter().enumerate().skip(1) {
            let n = 2 * k as i32;
            wp = &wp + &SuperField::term(n, crate::superfield::Mono::One, ck.clone());
            let r = BigRational::new((-1).into(), (n + 1).into());
            zeta = &zeta
                + &SuperField::term(n + 1, crate::superfield::Mono::One, ck.mul_rational(&r));
        }
        let wp = wp.with_z_prec(Some(nz + 1));
        let zeta = zeta.with_z_prec(Some(nz + 2));

        // ζ₁ = −λ⁻²(ζ − η₁ z)
        let zeta1 = (&zeta - &SuperField::z_pow(1).mul_qseries(&eta1)).shift_lambda(-2);
        let zeta1 = -zeta1;
        let zeta1_prime = zeta1.d_z();
        let zeta1_dot = zeta1.d_tau();
        let zeta1_dot_prime = zeta1_dot.d_z();
        let wp_prime = wp.d_z();
        let wp_dot = wp.d_tau();
        let wp_dot_prime = wp_dot.d_z();
        Weierstrass {
            config,
            e2: e(2),
            e4: e(4),
            e6: e(6),
            eta1,
            eta1_dot,
            g2,
            g3,
            wp,
            wp_prime,
            wp_dot,
            wp_dot_prime,
            zeta,
            zeta1,
            zeta1_prime,
            zeta1_dot,
            zeta1_dot_prime,
        }
    }

    pub fn get(&self, name: WName) -> WFunction {
        let value = match name {
            WName::Wp => &self.wp,
            WName::WpPrime => &self.wp_prime,
            WName::WpDot => &self.wp_dot,
            WName::WpDotPrime => &self.wp_dot_prime,
            WName::Zeta => &self.zeta,
            WName::Zeta1 => &self.zeta1,
            WName::Zeta1Prime => &self.zeta1_prime,
            WName::Zeta1Dot => &self.zeta1_dot,
            WName::Zeta1DotPrime => &self.zeta1_dot_prime,
        };
        WFunction {
            name,
            value: value.clone(),
        }
    }

    /// A z-constant field from a q-series.
    pub fn constant(&self, s: &QSeries) -> SuperField {
        SuperField::constant(s.clone())
    }

    /// `λ^k · r` as a constant field.
    pub fn lam(&self, r: (i64, i64), k: i32) -> SuperField {
        SuperField::scalar(&(&Scalar::ratio(r.0, r.1) * &Scalar::lambda(k)))
    }

    /// `(℘′)² − 4℘³ + g₂℘ + g₃`.
    pub fn cubic_residual(&self) -> SuperField {
        let p = &self.wp;
        let lhs = &(&self.wp_prime * &self.wp_prime) - &p.pow(3).mul_scalar(&Scalar::integer(4));
        &(&lhs + &p.mul_qseries(&self.g2)) + &self.constant(&self.g3)
    }

    /// Ramanujan's three derivative identities for `E₂, E₄, E₆`.
    pub fn ramanujan_checks(&self) -> Vec<Check> {
        let (e2, e4, e6) = (&self.e2, &self.e4, &self.e6);
        let r = |n, d| Scalar::ratio(n, d);
        vec![
            Check::new(
                "ramanujan_E2",
                e2.partial().check_eq(&(&(e2 * e2) - e4).mul_scalar(&r(1, 12))),
            ),
            Check::new(
                "ramanujan_E4",
                e4.partial().check_eq(&(&(e2 * e4) - e6).mul_scalar(&r(1, 3))),
            ),
            Check::new(
                "ramanujan_E6",
                e6.partial().check_eq(&(&(e2 * e6) - &(e4 * e4)).mul_scalar(&r(1, 2))),
            ),
        ]
    }

    /// The Weierstrass structure identities and the three τ-derivative
    /// identities used for the Kodaira-Spencer closure computation.
    pub fn identity_checks(&self) -> Vec<Check> {
        let z1 = &self.zeta1;
        let p = &self.wp;
        let pp = &self.wp_prime;
        let e2 = self.constant(&self.e2);
        let g2 = self.constant(&self.g2);

        let ode = Check::new("wp_cubic", self.cubic_residual().check_zero());
        let second = Check::new(
            "wp_second_derivative",
            pp.d_z()
                .check_eq(&(&p.pow(2).mul_scalar(&Scalar::integer(6)) - &g2.mul_scalar(&Scalar::ratio(1, 2)))),
        );
        let zeta_prime = Check::new("zeta_prime", self.zeta.d_z().check_eq(&-p));
        let zeta1_prime = Check::new(
            "zeta1_prime",
            self.zeta1_prime
                .check_eq(&(p + &self.constant(&self.eta1)).shift_lambda(-2)),
        );

        // ζ̇₁ + ζ₁ζ₁′ = λ⁻⁴ ½℘′
        let w1 = Check::new(
            "weierstrass_zeta1",
            (&self.zeta1_dot + &(z1 * &self.zeta1_prime))
                .check_eq(&pp.mul_scalar(&(&Scalar::ratio(1, 2) * &Scalar::lambda(-4)))),
        );

        // ℘̇ + ζ₁℘′ = λ⁻²(2℘² + λ⁴(E₂/6)℘ − g₂/3)
        let lhs2 = &self.wp_dot + &(z1 * pp);
        let rhs2 = (&(&p.pow(2).mul_scalar(&Scalar::integer(2))
            + &(&e2 * p).mul_scalar(&(&Scalar::ratio(1, 6) * &Scalar::lambda(4))))
            - &g2.mul_scalar(&Scalar::ratio(1, 3)))
            .shift_lambda(-2);
        let printed_gap = (&e2 * &(p - &SuperField::one()))
            .mul_scalar(&(&Scalar::ratio(1, 6) * &Scalar::lambda(2)));
        let printed2 = (&(&p.pow(2).mul_scalar(&Scalar::integer(2))
            + &e2.mul_scalar(&(&Scalar::ratio(1, 6) * &Scalar::lambda(4))))
            - &g2.mul_scalar(&Scalar::ratio(1, 3)))
            .shift_lambda(-2);
        let w2 = Check::new("weierstrass_wp", lhs2.check_eq(&rhs2)).with_note(format!(
            "the E2 term needs a factor of wp; the form without it leaves exactly \
             lambda^2*(E2/6)*(wp - 1): {}",
            (&lhs2 - &printed2).check_eq(&printed_gap)
        ));

        // ℘̇′ + ζ₁℘″ = λ⁻² 3(℘ + λ⁴E₂/12)℘′
        let w3 = Check::new(
            "weierstrass_wp_prime",
            (&self.wp_dot_prime + &(z1 * &pp.d_z())).check_eq(
                &(&(p + &e2.mul_scalar(&(&Scalar::ratio(1, 12) * &Scalar::lambda(4)))) * pp)
                    .mul_scalar(&(&Scalar::integer(3) * &Scalar::lambda(-2))),
            ),
        );
        vec![ode, second, zeta_prime, zeta1_prime, w1, w2, w3]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superfield::Mono;

    fn small() -> Weierstrass {
        Weierstrass::new(Config {
            nz: 10,
            nq: 4,
            depth: 4,
        })
    }

    /// Independent oracle: match coefficients of (℘′)² = 4℘³ − g₂℘ − g₃
    /// at z⁻² and z⁰ with an unknown ansatz `z⁻² + a z² + b z⁴`.
    #[test]
    fn low_coefficients_from_the_cubic() {
        let w = small();
        // (℘′)² = 4z⁻⁶ − 8a z⁻² − 16b + ..., 4℘³ = 4z⁻⁶ + 12a z⁻² + 12b + ...
        // z⁻²: −8a = 12a − g₂  ⇒ a = g₂/20;  z⁰: −16b = 12b − g₃ ⇒ b = g₃/28.
        let a = w.g2.mul_scalar(&Scalar::ratio(1, 20));
        let b = w.g3.mul_scalar(&Scalar::ratio(1, 28));
        assert_eq!(w.wp.component(2, Mono::One), a);
        assert_eq!(w.wp.component(4, Mono::One), b);
        assert_eq!(w.wp.component(-2, Mono::One), QSeries::one().with_order(4));
        assert!(w.wp.component(0, Mono::One).is_zero());
    }

    #[test]
    fn structure_identities_hold() {
        let w = small();
        for c in w.ramanujan_checks().into_iter().chain(w.identity_checks()) {
            assert!(c.verdict.holds(), "{}: {}", c.id, c.verdict);
        }
    }

    #[test]
    fn zeta1_leading_terms() {
        let w = small();
        assert_eq!(
            w.zeta1.component(-1, Mono::One),
            QSeries::lambda(-2).with_order(4).mul_scalar(&Scalar::integer(-1))
        );
        assert_eq!(
            w.zeta1_prime.component(0, Mono::One),
            w.eta1.shift_lambda(-2)
        );
        assert!(w.zeta1_dot.component(-1, Mono::One).is_zero());
        assert_eq!(w.zeta1_dot.valuation(), Some(1));
    }

    #[test]
    fn zeta_has_no_constant_term() {
        assert!(small().zeta.component(0, Mono::One).is_zero());
    }
}
