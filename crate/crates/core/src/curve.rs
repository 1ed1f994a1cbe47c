//! The generating functions `R, Ψ₁, Ψ₂, ψ, x, y` of the chart, the operator `D̃`,
//! and the presentation relations between them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalars::{fit_quasimodular, QSeries, QuasiPoly, Scalar};
use crate::superfield::{Mono, SuperField};
use crate::verdict::{Check, Verdict};
use crate::weierstrass::Weierstrass;
use crate::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveName {
    R,
    Psi1,
    Psi2,
    Psi2Tilde,
    X,
    Y,
    Psi,
    PhiTilde,
}

impl CurveName {
    pub const ALL: [CurveName; 8] = [
        CurveName::R,
        CurveName::Psi1,
        CurveName::Psi2,
        CurveName::Psi2Tilde,
        CurveName::X,
        CurveName::Y,
        CurveName::Psi,
        CurveName::PhiTilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurveName::R => "R",
            CurveName::Psi1 => "Psi1",
            CurveName::Psi2 => "Psi2",
            CurveName::Psi2Tilde => "Psi2tilde",
            CurveName::X => "x",
            CurveName::Y => "y",
            CurveName::Psi => "psi",
            CurveName::PhiTilde => "phitilde",
        }
    }
}

impl FromStr for CurveName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CurveName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for CurveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedField {
    pub name: CurveName,
    pub value: SuperField,
}

/// Identifiers accepted by [`Curve::check_relation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    DPsi1,
    DPsi2,
    Psi2Eq,
    DRx,
    D3Ry,
    Dpsi,
    Cubic,
}

impl Relation {
    pub const ALL: [Relation; 7] = [
        Relation::DPsi1,
        Relation::DPsi2,
        Relation::Psi2Eq,
        Relation::DRx,
        Relation::D3Ry,
        Relation::Dpsi,
        Relation::Cubic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::DPsi1 => "DPsi1",
            Relation::DPsi2 => "DPsi2",
            Relation::Psi2Eq => "Psi2eq",
            Relation::DRx => "DRx",
            Relation::D3Ry => "D3Ry",
            Relation::Dpsi => "Dpsi",
            Relation::Cubic => "cubic",
        }
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Elements `xⁿ, yxⁿ, xⁿψ, yxⁿψ` of the algebra basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraBasis {
    X(usize),
    YX(usize),
    XPsi(usize),
    YXPsi(usize),
}

impl fmt::Display for AlgebraBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xn = |n: usize| match n {
            0 => String::new(),
            1 => "x".into(),
            n => format!("x^{n}"),
        };
        let s = match *self {
            AlgebraBasis::X(0) => "1".to_string(),
            AlgebraBasis::X(n) => xn(n),
            AlgebraBasis::YX(n) => format!("y{}", xn(n)),
            AlgebraBasis::XPsi(n) => format!("{}psi", xn(n)),
            AlgebraBasis::YXPsi(n) => format!("y{}psi", xn(n)),
        };
        f.write_str(&s)
    }
}

/// Coordinates of a function in the algebra basis over `Q = ℚ[λ^±][E₂,E₄,E₆] ⊗ Λ[φ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDecomposition {
    /// `(basis element, 1 or φ, coefficient)`; the term is `coefficient · φ^ε · element`.
    pub terms: Vec<(AlgebraBasis, Mono, QSeries)>,
}

impl AlgebraDecomposition {
    /// Each coefficient as a λ-graded polynomial in `E₂, E₄, E₆`.
    pub fn quasimodular(&self, max_weight: u32) -> Option<Vec<(AlgebraBasis, Mono, QuasiPoly)>> {
        self.terms
            .iter()
            .map(|(b, m, c)| fit_quasimodular(c, max_weight).map(|p| (*b, *m, p)))
            .collect()
    }
}

/// The chart functions built from one set of Weierstrass expansions.
#[derive(Clone, Debug)]
pub struct Curve {
    pub w: Weierstrass,
    pub r: SuperField,
    pub psi1: SuperField,
    pub psi2: SuperField,
    pub psi2_tilde: SuperField,
    pub psi: SuperField,
    pub phi_tilde: SuperField,
    pub x: SuperField,
    pub y: SuperField,
}

/// `1 + c·λ^k·E₂·θφ`.
fn theta_phi_factor(e2: &QSeries, c: (i64, i64), k: i32) -> SuperField {
    let s = &Scalar::ratio(c.0, c.1) * &Scalar::lambda(k);
    &SuperField::one() + &SuperField::term(0, Mono::ThetaPhi, e2.mul_scalar(&s))
}

impl Curve {
    pub fn new(config: Config) -> Self {
        Self::from_weierstrass(Weierstrass::new(config))
    }

    pub fn from_weierstrass(w: Weierstrass) -> Self {
        let theta = SuperField::theta();
        let phi = SuperField::phi();
        let r = &w.wp + &(&SuperField::theta_phi() * &w.wp_dot);
        let psi1 = &theta - &(&phi * &w.zeta1);
        let psi2 = &(&phi * &w.zeta1_dot) + &(&theta * &w.zeta1_prime);
        let x = (&theta_phi_factor(&w.e2, (-1, 6), 2) * &r).shift_lambda(-4);
        let y = (&theta_phi_factor(&w.e2, (-1, 4), 2) * &r.D().D()).shift_lambda(-6);
        Curve {
            psi: psi1.shift_lambda(1),
            phi_tilde: phi.shift_lambda(1),
            psi2_tilde: psi2.shift_lambda(-1),
            r,
            psi1,
            psi2,
            x,
            y,
            w,
        }
    }

    pub fn config(&self) -> Config {
        self.w.config
    }

    pub fn build(&self, name: CurveName) -> NamedField {
        let value = match name {
            CurveName::R => &self.r,
            CurveName::Psi1 => &self.psi1,
            CurveName::Psi2 => &self.psi2,
            CurveName::Psi2Tilde => &self.psi2_tilde,
            CurveName::X => &self.x,
            CurveName::Y => &self.y,
            CurveName::Psi => &self.psi,
            CurveName::PhiTilde => &self.phi_tilde,
        };
        NamedField {
            name,
            value: value.clone(),
        }
    }

    pub fn e2(&self) -> SuperField {
        SuperField::constant(self.w.e2.clone())
    }

    pub fn e4(&self) -> SuperField {
        SuperField::constant(self.w.e4.clone())
    }

    pub fn e6(&self) -> SuperField {
        SuperField::constant(self.w.e6.clone())
    }

    /// `D̃ = λ⁻¹(1 − λ²(E₂/12)θφ)D`.
    pub fn tilde_d(&self, f: &SuperField) -> SuperField {
        (&theta_phi_factor(&self.w.e2, (-1, 12), 2) * &f.D()).shift_lambda(-1)
    }

    /// `DⁿR` for `n ≤ depth`.
    pub fn d_power_r(&self, n: usize) -> Result<SuperField> {
        let max = self.config().depth;
        if n > max {
            return Err(Error::DepthExceeded { requested: n, max });
        }
        let mut f = self.r.clone();
        for _ in 0..n {
            f = f.D();
        }
        Ok(f)
    }

    pub fn algebra_element(&self, b: AlgebraBasis) -> Result<SuperField> {
        let max = self.config().depth;
        let n = match b {
            AlgebraBasis::X(n) | AlgebraBasis::YX(n) | AlgebraBasis::XPsi(n) | AlgebraBasis::YXPsi(n) => n,
        };
        if n > max {
            return Err(Error::DepthExceeded { requested: n, max });
        }
        let xn = self.x.pow(n as u32);
        Ok(match b {
            AlgebraBasis::X(_) => xn,
            AlgebraBasis::YX(_) => &self.y * &xn,
            AlgebraBasis::XPsi(_) => &xn * &self.psi,
            AlgebraBasis::YXPsi(_) => &(&self.y * &xn) * &self.psi,
        })
    }

    /// Left and right sides of a presentation relation.
    pub fn relation_sides(&self, id: Relation) -> (SuperField, SuperField) {
        let one = SuperField::one();
        let (x, y, psi, pt) = (&self.x, &self.y, &self.psi, &self.phi_tilde);
        let c = |n, d| Scalar::ratio(n, d);
        match id {
            Relation::DPsi1 => (self.psi1.D(), &one + &(&SuperField::phi() * &self.psi2)),
            Relation::DPsi2 => {
                // η₁ enters evaluated at τ + θφ, like ℘ inside R.
                let eta = &SuperField::constant(self.w.eta1.clone())
                    + &SuperField::term(0, Mono::ThetaPhi, self.w.eta1_dot.clone());
                (self.psi2.D(), (&self.r + &eta).shift_lambda(-2))
            }
            Relation::Psi2Eq => (
                self.psi2_tilde.clone(),
                &(&(x * psi) + &(pt * y).mul_scalar(&c(1, 2)))
                    - &(&self.e2() * psi).mul_scalar(&c(1, 12)),
            ),
            Relation::DRx => (
                self.tilde_d(x),
                &(y * psi)
                    + &(pt
                        * &(&(x * x).mul_scalar(&c(2, 1)) - &self.e4().mul_scalar(&c(1, 36)))),
            ),
            Relation::D3Ry => (
                self.tilde_d(y),
                &(&(&(x * x).mul_scalar(&c(6, 1)) - &self.e4().mul_scalar(&c(1, 24))) * psi)
                    + &(&(pt * x) * y).mul_scalar(&c(3, 1)),
            ),
            Relation::Dpsi => (self.tilde_d(psi), &one + &(&(pt * psi) * x)),
            Relation::Cubic => {
                let psi_pt = psi * pt;
                let a = &self.e4() - &(&self.e6() * &psi_pt).mul_scalar(&c(1, 3));
                let e4sq = &self.e4() * &self.e4();
                let b = &self.e6() - &(&e4sq * &psi_pt).mul_scalar(&c(1, 2));
                let lhs = &(&(&(y * y) - &x.pow(3).mul_scalar(&c(4, 1)))
                    + &(&a * x).mul_scalar(&c(1, 12)))
                    - &b.mul_scalar(&c(1, 216));
                (lhs, SuperField::zero())
            }
        }
    }

    pub fn check_relation(&self, id: Relation) -> Check {
        let (lhs, rhs) = self.relation_sides(id);
        let check = Check::new(id.name(), lhs.check_eq(&rhs));
        match id {
            Relation::DPsi2 => {
                // Reading η₁ at τ alone leaves exactly λ⁻²η̇₁θφ.
                let frozen = (&self.r + &SuperField::constant(self.w.eta1.clone())).shift_lambda(-2);
                let gap = SuperField::term(0, Mono::ThetaPhi, self.w.eta1_dot.shift_lambda(-2));
                let residual = (&lhs - &frozen).check_eq(&gap);
                check.with_note(format!(
                    "holds with eta1 evaluated at tau + theta*phi; with eta1(tau) the difference \
                     is exactly lambda^-2*eta1dot*theta*phi ({residual})"
                ))
            }
            _ => check,
        }
    }

    pub fn check_all(&self) -> Vec<Check> {
        Relation::ALL.iter().map(|&r| self.check_relation(r)).collect()
    }

    /// Writes `f` in the basis `xⁿ, yxⁿ, xⁿψ, yxⁿψ` over `O_S`, eliminating
    /// poles from the deepest one up. Fails if a simple pole or a regular
    /// remainder survives.
    pub fn decompose_algebra(&self, f: &SuperField) -> Result<AlgebraDecomposition> {
        let max = self.config().depth;
        let mut rest = f.clone();
        let mut terms = Vec::new();
        let basis_for = |mono: Mono, pole: i32| -> Result<Option<AlgebraBasis>> {
            let odd = mono == Mono::Theta || mono == Mono::ThetaPhi;
            let b = match pole {
                p if p < 0 || p == 1 => return Ok(None),
                p if p % 2 == 0 => {
                    let n = (p / 2) as usize;
                    if odd { AlgebraBasis::XPsi(n) } else { AlgebraBasis::X(n) }
                }
                p => {
                    let n = ((p - 3) / 2) as usize;
                    if odd { AlgebraBasis::YXPsi(n) } else { AlgebraBasis::YX(n) }
                }
            };
            let n = match b {
                AlgebraBasis::X(n) | AlgebraBasis::YX(n) | AlgebraBasis::XPsi(n) | AlgebraBasis::YXPsi(n) => n,
            };
            if n > max {
                return Err(Error::DepthExceeded { requested: n, max });
            }
            Ok(Some(b))
        };
        // Pass 1 removes the 1 and θ parts, pass 2 the φ and θφ parts.
        for (monos, phi_side) in [([Mono::One, Mono::Theta], false), ([Mono::Phi, Mono::ThetaPhi], true)] {
            loop {
                let Some((n, m)) = rest
                    .terms()
                    .filter(|(n, _)| *n <= 0)
                    .flat_map(|(n, g)| monos.iter().filter(move |&&m| !g.get(m).is_zero()).map(move |&m| (n, m)))
                    .next()
                else {
                    break;
                };
                let pole = -n;
                let Some(b) = basis_for(m, pole)? else {
                    return Err(Error::ResidueObstruction(format!(
                        "{} at z^{n}",
                        m.label()
                    )));
                };
                let mut elem = self.algebra_element(b)?;
                if phi_side {
                    elem = &SuperField::phi() * &elem;
                }
                let lead_mono = match (m, phi_side) {
                    (Mono::ThetaPhi, _) => Mono::ThetaPhi,
                    (Mono::Phi, _) => Mono::Phi,
                    (other, _) => other,
                };
                let lead = elem.component(n, lead_mono);
                let coef = &rest.component(n, m) * &lead.inv()?;
                rest = &rest - &elem.mul_qseries(&coef);
                terms.push((b, if phi_side { Mono::Phi } else { Mono::One }, coef));
            }
        }
        if let Some((n, g)) = rest.terms().next() {
            let m = Mono::ALL.into_iter().find(|&m| !g.get(m).is_zero()).expect("nonzero");
            return Err(Error::NotInSpan(format!("{} at z^{n}", m.label())));
        }
        Ok(AlgebraDecomposition { terms })
    }

    /// Recombines an algebra decomposition into a field.
    pub fn recombine_algebra(&self, d: &AlgebraDecomposition) -> Result<SuperField> {
        let mut out = SuperField::zero();
        for (b, m, c) in &d.terms {
            let mut e = self.algebra_element(*b)?;
            if *m == Mono::Phi {
                e = &SuperField::phi() * &e;
            }
            out = &out + &e.mul_qseries(c);
        }
        Ok(out)
    }
}

/// Verdicts on the leading singular terms of `DⁿR` for `n ≤ depth`.
pub fn leading_term_checks(curve: &Curve) -> Vec<Check> {
    let depth = curve.config().depth;
    let nq = curve.config().nq;
    let mut out = Vec::new();
    let factorial = |k: usize| (1..=k as i64).product::<i64>();
    for n in 0..=depth {
        let f = curve.d_power_r(n).expect("within depth");
        let (exp, mono, coef) = if n % 2 == 0 {
            let j = n / 2;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            (-(j as i32) - 2, Mono::One, sign * factorial(j + 1))
        } else {
            let j = (n - 1) / 2;
            let sign = if j % 2 == 0 { -1 } else { 1 };
            (-(j as i32) - 3, Mono::Theta, sign * factorial(j + 2))
        };
        let expected = QSeries::from_scalar(&Scalar::integer(coef)).with_order(nq);
        let lead_ok = f.component(exp, mono).check_eq(&expected);
        let deeper = f.valuation() == Some(exp);
        let verdict = if deeper { lead_ok } else {
            Verdict::InsufficientAccuracy(format!("valuation of D^{n}R is {:?}", f.valuation()))
        };
        out.push(Check::new(format!("leading_D{n}R"), verdict));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> Curve {
        Curve::new(Config { nz: 10, nq: 4, depth: 4 })
    }

    #[test]
    fn relations_hold_at_low_order() {
        let c = curve();
        for check in c.check_all() {
            assert!(check.verdict.holds(), "{}: {}", check.id, check.verdict);
        }
    }

    #[test]
    fn psi1_leading_terms() {
        let c = curve();
        let nq = 4;
        assert_eq!(c.psi1.component(0, Mono::Theta), QSeries::one().with_order(nq));
        assert_eq!(c.psi1.component(-1, Mono::Phi), QSeries::lambda(-2).with_order(nq));
        assert_eq!(c.psi1.valuation(), Some(-1));
    }

    #[test]
    fn psi2_leading_term() {
        let c = curve();
        assert_eq!(c.psi2.valuation(), Some(-2));
        assert_eq!(c.psi2.component(-2, Mono::Theta), QSeries::lambda(-2).with_order(4));
        assert!(c.psi2.component(-1, Mono::Theta).is_zero());
    }

    #[test]
    fn x_and_yx_leading_terms() {
        let c = curve();
        assert_eq!(c.x.valuation(), Some(-2));
        assert_eq!(c.x.component(-2, Mono::One), QSeries::lambda(-4).with_order(4));
        let yx = c.algebra_element(AlgebraBasis::YX(1)).unwrap();
        assert_eq!(yx.valuation(), Some(-5));
        assert_eq!(
            yx.component(-5, Mono::One),
            QSeries::lambda(-10).with_order(4).mul_scalar(&Scalar::integer(-2))
        );
    }

    #[test]
    fn leading_terms_of_d_powers() {
        let c = curve();
        for check in leading_term_checks(&c) {
            assert!(check.verdict.holds(), "{}: {}", check.id, check.verdict);
        }
        assert!(matches!(c.d_power_r(5), Err(Error::DepthExceeded { .. })));
    }

    #[test]
    fn parities() {
        use crate::superfield::Parity;
        let c = curve();
        for f in [&c.psi1, &c.psi2, &c.psi] {
            assert_eq!(f.parity(), Parity::Odd);
        }
        for f in [&c.r, &c.x, &c.y] {
            assert_eq!(f.parity(), Parity::Even);
        }
    }

    #[test]
    fn algebra_decomposition_round_trip() {
        let c = curve();
        let f = &(&c.x * &c.y) + &(&c.phi_tilde * &c.x);
        let d = c.decompose_algebra(&f).unwrap();
        let back = c.recombine_algebra(&d).unwrap();
        assert!(back.check_eq(&f).holds());
        let q = d.quasimodular(8).unwrap();
        assert!(q.iter().any(|(b, m, _)| *b == AlgebraBasis::YX(1) && *m == Mono::One));
    }
}
