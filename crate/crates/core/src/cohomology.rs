//! Decomposition in the function basis `1, Ψ₁, Ψ₂, DⁿR`, reduction to classes in
//! `H¹ = coker(δ)`, the Gauss-Manin connection and its horizontal basis.
//!
//! A class `(c₁, c₂)` stands for `s·(c₁Ψ₁ + c₂Ψ₂)` with coefficients to the
//! left of `Ψᵢ`. Coefficients live in `O_S = q-series ⊗ Λ[φ]`, optionally
//! extended by a formal `τ` of degree at most one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::forms::{build_lift, gm_reduce, Lift};
use crate::scalars::{QSeries, Scalar};
use crate::superfield::{Mono, SuperField};
use crate::verdict::{Check, Verdict};

/// `body + φ·odd`, a function on the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseFunction {
    pub body: QSeries,
    pub phi: QSeries,
}

impl BaseFunction {
    pub fn zero() -> Self {
        BaseFunction {
            body: QSeries::zero(),
            phi: QSeries::zero(),
        }
    }

    pub fn one() -> Self {
        Self::even(QSeries::one())
    }

    pub fn even(body: QSeries) -> Self {
        BaseFunction {
            body,
            phi: QSeries::zero(),
        }
    }

    /// `φ·s`.
    pub fn odd(phi: QSeries) -> Self {
        BaseFunction {
            body: QSeries::zero(),
            phi,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero() && self.phi.is_zero()
    }

    /// Negates the φ-part (moving past an odd symbol).
    pub fn parity_flip(&self) -> Self {
        BaseFunction {
            body: self.body.clone(),
            phi: -&self.phi,
        }
    }

    /// `∂τ = λ²∂` on both parts.
    pub fn d_tau(&self) -> Self {
        BaseFunction {
            body: self.body.partial().shift_lambda(2),
            phi: self.phi.partial().shift_lambda(2),
        }
    }

    pub fn d_phi(&self) -> Self {
        Self::even(self.phi.clone())
    }

    pub fn to_field(&self) -> SuperField {
        &SuperField::constant(self.body.clone())
            + &SuperField::term(0, Mono::Phi, self.phi.clone()).with_q_prec(self.phi.order())
    }

    /// `self · f`.
    pub fn act(&self, f: &SuperField) -> SuperField {
        let mut out = f.mul_qseries(&self.body);
        if !self.phi.is_zero() {
            out = &out + &f.mul_qseries(&self.phi).phi_times();
        }
        out
    }

    pub fn check_eq(&self, other: &BaseFunction) -> Verdict {
        Verdict::all([
            self.body.check_eq(&other.body),
            self.phi.check_eq(&other.phi),
        ])
    }
}

impl Add for &BaseFunction {
    type Output = BaseFunction;
    fn add(self, rhs: &BaseFunction) -> BaseFunction {
        BaseFunction {
            body: &self.body + &rhs.body,
            phi: &self.phi + &rhs.phi,
        }
    }
}

impl Sub for &BaseFunction {
    type Output = BaseFunction;
    fn sub(self, rhs: &BaseFunction) -> BaseFunction {
        self + &(-rhs)
    }
}

impl Neg for &BaseFunction {
    type Output = BaseFunction;
    fn neg(self) -> BaseFunction {
        BaseFunction {
            body: -&self.body,
            phi: -&self.phi,
        }
    }
}

impl Mul for &BaseFunction {
    type Output = BaseFunction;
    fn mul(self, rhs: &BaseFunction) -> BaseFunction {
        BaseFunction {
            body: &self.body * &rhs.body,
            phi: &(&self.body * &rhs.phi) + &(&self.phi * &rhs.body),
        }
    }
}

impl fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.body.is_zero(), self.phi.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.body),
            (true, false) => write!(f, "phi*[{}]", self.phi),
            (false, false) => write!(f, "{} + phi*[{}]", self.body, self.phi),
        }
    }
}

/// `c0 + τ·c1` with a formal τ satisfying `∂τ τ = 1`, `∂φ τ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauLinear {
    pub c0: BaseFunction,
    pub c1: BaseFunction,
}

impl TauLinear {
    pub fn constant(c: BaseFunction) -> Self {
        TauLinear {
            c0: c,
            c1: BaseFunction::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(BaseFunction::zero())
    }

    pub fn one() -> Self {
        Self::constant(BaseFunction::one())
    }

    /// `τ · c`.
    pub fn tau(c: BaseFunction) -> Self {
        TauLinear {
            c0: BaseFunction::zero(),
            c1: c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn parity_flip(&self) -> Self {
        TauLinear {
            c0: self.c0.parity_flip(),
            c1: self.c1.parity_flip(),
        }
    }

    pub fn d_tau(&self) -> Self {
        TauLinear {
            c0: &self.c0.d_tau() + &self.c1,
            c1: self.c1.d_tau(),
        }
    }

    pub fn d_phi(&self) -> Self {
        TauLinear {
            c0: self.c0.d_phi(),
            c1: self.c1.d_phi(),
        }
    }

    /// Product; fails if the τ-degree would exceed one.
    pub fn mul(&self, other: &TauLinear) -> Result<TauLinear> {
        let quadratic = &self.c1 * &other.c1;
        if !quadratic.is_zero() {
            return Err(Error::InsufficientAccuracy(
                "τ-degree above one is not represented".into(),
            ));
        }
        Ok(TauLinear {
            c0: &self.c0 * &other.c0,
            c1: &(&self.c0 * &other.c1) + &(&self.c1 * &other.c0),
        })
    }

    pub fn check_eq(&self, other: &TauLinear) -> Verdict {
        Verdict::all([self.c0.check_eq(&other.c0), self.c1.check_eq(&other.c1)])
    }
}

impl Add for &TauLinear {
    type Output = TauLinear;
    fn add(self, rhs: &TauLinear) -> TauLinear {
        TauLinear {
            c0: &self.c0 + &rhs.c0,
            c1: &self.c1 + &rhs.c1,
        }
    }
}

impl Neg for &TauLinear {
    type Output = TauLinear;
    fn neg(self) -> TauLinear {
        TauLinear {
            c0: -&self.c0,
            c1: -&self.c1,
        }
    }
}

impl fmt::Display for TauLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            write!(f, "{}", self.c0)
        } else if self.c0.is_zero() {
            write!(f, "tau*({})", self.c1)
        } else {
            write!(f, "{} + tau*({})", self.c0, self.c1)
        }
    }
}

/// `s·(psi1·Ψ₁ + psi2·Ψ₂)` in `H¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub psi1: TauLinear,
    pub psi2: TauLinear,
}

impl CohClass {
    pub fn zero() -> Self {
        CohClass {
            psi1: TauLinear::zero(),
            psi2: TauLinear::zero(),
        }
    }

    pub fn new(psi1: BaseFunction, psi2: BaseFunction) -> Self {
        CohClass {
            psi1: TauLinear::constant(psi1),
            psi2: TauLinear::constant(psi2),
        }
    }

    /// `[sΨ₁]`.
    pub fn s_psi1() -> Self {
        Self::new(BaseFunction::one(), BaseFunction::zero())
    }

    /// `[sΨ₂]`.
    pub fn s_psi2() -> Self {
        Self::new(BaseFunction::zero(), BaseFunction::one())
    }

    pub fn is_zero(&self) -> bool {
        self.psi1.is_zero() && self.psi2.is_zero()
    }

    /// `h · self`.
    pub fn left_mul(&self, h: &TauLinear) -> Result<CohClass> {
        Ok(CohClass {
            psi1: h.mul(&self.psi1)?,
            psi2: h.mul(&self.psi2)?,
        })
    }

    /// `self · h`: `h` moves past the odd `Ψᵢ`, flipping its odd part.
    pub fn right_mul(&self, h: &TauLinear) -> Result<CohClass> {
        let h = h.parity_flip();
        Ok(CohClass {
            psi1: self.psi1.mul(&h)?,
            psi2: self.psi2.mul(&h)?,
        })
    }

    pub fn check_eq(&self, other: &CohClass) -> Verdict {
        Verdict::all([
            self.psi1.check_eq(&other.psi1),
            self.psi2.check_eq(&other.psi2),
        ])
    }
}

impl Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        CohClass {
            psi1: &self.psi1 + &rhs.psi1,
            psi2: &self.psi2 + &rhs.psi2,
        }
    }
}

impl Sub for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: &CohClass) -> CohClass {
        CohClass {
            psi1: &self.psi1 + &(-&rhs.psi1),
            psi2: &self.psi2 + &(-&rhs.psi2),
        }
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*[s*Psi1] + ({})*[s*Psi2]", self.psi1, self.psi2)
    }
}

/// Coordinates of a function in the basis `1, Ψ₁, Ψ₂, DⁿR`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub one: BaseFunction,
    pub psi1: BaseFunction,
    pub psi2: BaseFunction,
    /// Coefficient of `DⁿR` at index `n`.
    pub d_r: Vec<BaseFunction>,
    /// Truncation orders at which the remainder was confirmed to vanish.
    pub remainder: Verdict,
}

/// Splits a QSeries coefficient of `θ`/`θφ` or `1`/`φ` into a base function
/// `c` with `c·L·m` matching, where `L` is the leading coefficient of the
/// basis element.
fn coefficient_from(even: QSeries, odd: QSeries, lead: &QSeries, odd_sign: bool) -> Result<BaseFunction> {
    let inv = lead.inv()?;
    let phi = &odd * &inv;
    Ok(BaseFunction {
        body: &even * &inv,
        phi: if odd_sign { -phi } else { phi },
    })
}

/// Triangular elimination by pole order.
pub fn decompose(curve: &Curve, f: &SuperField, depth: usize) -> Result<Decomposition> {
    let mut rest = f.clone();
    let mut d_r = vec![BaseFunction::zero(); depth + 1];
    let mut psi2 = BaseFunction::zero();
    let basis = |n: usize| -> Result<SuperField> {
        if n > depth {
            return Err(Error::DepthExceeded { requested: n, max: depth });
        }
        curve.d_power_r(n)
    };
    while let Some(n) = rest.valuation().filter(|&n| n <= -2) {
        let m = -n;
        let body = (rest.component(n, Mono::One), rest.component(n, Mono::Phi));
        if !(body.0.is_zero() && body.1.is_zero()) {
            let k = 2 * (m - 2) as usize;
            let e = basis(k)?;
            let c = coefficient_from(body.0, body.1, &e.component(n, Mono::One), false)?;
            rest = &rest - &c.act(&e);
            d_r[k] = &d_r[k] + &c;
        }
        let odd = (rest.component(n, Mono::Theta), rest.component(n, Mono::ThetaPhi));
        if !(odd.0.is_zero() && odd.1.is_zero()) {
            // c·(Lθ) = c_b L θ − c_φ L θφ
            let (e, slot) = if m == 2 {
                (curve.psi2.clone(), None)
            } else {
                let k = 2 * (m - 3) as usize + 1;
                (basis(k)?, Some(k))
            };
            let c = coefficient_from(odd.0, odd.1, &e.component(n, Mono::Theta), true)?;
            rest = &rest - &c.act(&e);
            match slot {
                Some(k) => d_r[k] = &d_r[k] + &c,
                None => psi2 = &psi2 + &c,
            }
        }
    }
    // Pole order at most one: only Ψ₁ (θ at z⁰, θφ at z⁰) and constants remain.
    let psi1 = BaseFunction {
        body: rest.component(0, Mono::Theta),
        phi: -rest.component(0, Mono::ThetaPhi),
    };
    rest = &rest - &psi1.act(&curve.psi1);
    let one = BaseFunction {
        body: rest.component(0, Mono::One),
        phi: rest.component(0, Mono::Phi),
    };
    rest = &rest - &one.to_field();
    for m in Mono::ALL {
        if !rest.component(-1, m).is_zero() {
            return Err(Error::ResidueObstruction(format!("{} at z^-1", m.label())));
        }
    }
    if let Some((n, g)) = rest.terms().next() {
        let m = Mono::ALL.into_iter().find(|&m| !g.get(m).is_zero()).expect("nonzero");
        return Err(Error::NotInSpan(format!("{} at z^{n}", m.label())));
    }
    Ok(Decomposition {
        one,
        psi1,
        psi2,
        d_r,
        remainder: rest.check_zero_from(0),
    })
}

/// `Σ coefficient · basis element`.
pub fn recombine(curve: &Curve, d: &Decomposition) -> Result<SuperField> {
    let mut out = &d.one.to_field() + &d.psi1.act(&curve.psi1);
    out = &out + &d.psi2.act(&curve.psi2);
    for (n, c) in d.d_r.iter().enumerate() {
        if !c.is_zero() {
            out = &out + &c.act(&curve.d_power_r(n)?);
        }
    }
    Ok(out)
}

/// The class of `s·f` in `coker(δ)`.
///
/// Uses `c·D(g) = D(σ(c) g)`, so every `D^{n+1}R` term is exact; then
/// `[1] = −[φΨ₂]` from `D(Ψ₁) = 1 + φΨ₂` and
/// `[R] = −η₁[1] − η̇₁[θφ]` with `[θφ] = −[φΨ₁]` from `D(Ψ₂) = λ⁻²(R + η₁ + θφη̇₁)`.
pub fn reduce_coker(curve: &Curve, f: &SuperField) -> Result<CohClass> {
    let d = decompose(curve, f, curve.config().depth)?;
    Ok(class_of_decomposition(curve, &d))
}

fn class_of_decomposition(curve: &Curve, d: &Decomposition) -> CohClass {
    let phi = BaseFunction::odd(QSeries::one());
    let eta1 = BaseFunction::even(curve.w.eta1.clone());
    let eta1_dot = BaseFunction::even(curve.w.eta1_dot.clone());
    let c_r = &d.d_r[0];
    // c·1 ≡ (0, −cφ);  c·R ≡ (c η̇₁ φ, c η₁ φ)
    let psi1 = &d.psi1 + &(&(c_r * &eta1_dot) * &phi);
    let psi2 = &(&d.psi2 - &(&d.one * &phi)) + &(&(c_r * &eta1) * &phi);
    CohClass::new(psi1, psi2)
}

/// Rewrites `s̄·h` as `s·h'` using `s̄ = λ·s·(1 + λ²(E₂/12)θφ)`, so the class
/// of `s̄·h` is `reduce_coker(sbar_to_s(h))`.
pub fn sbar_to_s(curve: &Curve, h: &SuperField) -> SuperField {
    let k = &Scalar::ratio(1, 12) * &Scalar::lambda(2);
    let factor = &SuperField::one()
        + &SuperField::term(0, Mono::ThetaPhi, curve.w.e2.mul_scalar(&k));
    (&factor * h).shift_lambda(1)
}

/// `∇(sΨᵢ)` for `i = 1, 2` as `(τ-part, φ-part)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionMatrix {
    pub rows: [(CohClass, CohClass); 2],
}

impl ConnectionMatrix {
    /// The matrix stated by the theorem: only `∇_τ(sΨ₁) = sΨ₂` is nonzero.
    pub fn expected() -> Self {
        ConnectionMatrix {
            rows: [
                (CohClass::s_psi2(), CohClass::zero()),
                (CohClass::zero(), CohClass::zero()),
            ],
        }
    }

    pub fn check_eq(&self, other: &ConnectionMatrix) -> Verdict {
        Verdict::all(self.rows.iter().zip(&other.rows).flat_map(|(a, b)| {
            [a.0.check_eq(&b.0), a.1.check_eq(&b.1)]
        }))
    }

    /// `∇ c` by Leibniz: `∇_X(Σ aⱼ sΨⱼ) = Σ (X aⱼ) sΨⱼ + Σ ±aⱼ ∇_X(sΨⱼ)`.
    pub fn apply(&self, c: &CohClass) -> Result<(CohClass, CohClass)> {
        let coeffs = [&c.psi1, &c.psi2];
        let mut tau = CohClass {
            psi1: coeffs[0].d_tau(),
            psi2: coeffs[1].d_tau(),
        };
        let mut phi = CohClass {
            psi1: coeffs[0].d_phi(),
            psi2: coeffs[1].d_phi(),
        };
        for (a, row) in coeffs.iter().zip(&self.rows) {
            tau = &tau + &row.0.left_mul(a)?;
            phi = &phi + &row.1.left_mul(&a.parity_flip())?;
        }
        Ok((tau, phi))
    }
}

impl fmt::Display for ConnectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, p)) in self.rows.iter().enumerate() {
            writeln!(f, "nabla(s*Psi{}) = dtau (x) [{t}] + dphi (x) [{p}]", i + 1)?;
        }
        Ok(())
    }
}

/// Runs lift → d → reduction → δ → coker for both basis classes.
pub fn gm_connection(curve: &Curve) -> Result<ConnectionMatrix> {
    let mut rows = Vec::new();
    for lift in [Lift::Omega1Tilde, Lift::Omega2Tilde] {
        let omega = build_lift(curve, lift);
        let (tau, phi) = gm_reduce(&omega.d_total()?)?;
        rows.push((reduce_coker(curve, &tau.0)?, reduce_coker(curve, &phi.0)?));
    }
    let second = rows.pop().expect("two rows");
    let first = rows.pop().expect("two rows");
    Ok(ConnectionMatrix { rows: [first, second] })
}

/// `e = sΨ₁ − sΨ₂·τ` and `f = sΨ₂`.
pub fn horizontal_basis() -> (CohClass, CohClass) {
    let tau = TauLinear::tau(BaseFunction::one());
    let e = &CohClass::s_psi1()
        - &CohClass::s_psi2().right_mul(&tau).expect("degree one");
    (e, CohClass::s_psi2())
}

/// `∇e = ∇f = 0` and `∇(τ·f) = f ⊗ dτ`.
pub fn horizontal_check(m: &ConnectionMatrix) -> Result<Vec<Check>> {
    let (e, f) = horizontal_basis();
    let zero = CohClass::zero();
    let mut out = Vec::new();
    for (name, c) in [("nabla_e", &e), ("nabla_f", &f)] {
        let (t, p) = m.apply(c)?;
        out.push(Check::new(
            name,
            Verdict::all([t.check_eq(&zero), p.check_eq(&zero)]),
        ));
    }
    let tau_f = f.left_mul(&TauLinear::tau(BaseFunction::one()))?;
    let (t, p) = m.apply(&tau_f)?;
    out.push(Check::new(
        "nabla_tau_f",
        Verdict::all([t.check_eq(&f), p.check_eq(&zero)]),
    ));
    Ok(out)
}

/// `s ≡ fφ` and `sθφ ≡ eφ + fτφ`.
pub fn period_relations(curve: &Curve) -> Result<Vec<Check>> {
    let (e, f) = horizontal_basis();
    let phi = TauLinear::constant(BaseFunction::odd(QSeries::one()));
    let tau_phi = TauLinear::tau(BaseFunction::odd(QSeries::one()));
    let s = reduce_coker(curve, &SuperField::one())?;
    let s_theta_phi = reduce_coker(curve, &SuperField::theta_phi())?;
    let rhs2 = &e.right_mul(&phi)? + &f.right_mul(&tau_phi)?;
    Ok(vec![
        Check::new("period_s", s.check_eq(&f.right_mul(&phi)?)),
        Check::new("period_s_theta_phi", s_theta_phi.check_eq(&rhs2)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Config;

    fn curve() -> Curve {
        Curve::new(Config { nz: 12, nq: 4, depth: 6 })
    }

    #[test]
    fn decompose_r() {
        let c = curve();
        let d = decompose(&c, &c.r, 6).unwrap();
        assert!(d.d_r[0].check_eq(&BaseFunction::one()).holds());
        assert!(d.d_r[1..].iter().all(BaseFunction::is_zero));
        assert!(d.one.is_zero() && d.psi1.is_zero() && d.psi2.is_zero());
    }

    #[test]
    fn decompose_psi1_psi2_product() {
        // Ψ₁Ψ₂ = λ⁻⁴·½·θφ℘′ and φ·DR = −θφ℘′, so the DR coefficient is −½λ⁻⁴φ.
        let c = curve();
        let f = &c.psi1 * &c.psi2;
        let d = decompose(&c, &f, 6).unwrap();
        let expected = BaseFunction::odd(QSeries::from_scalar(
            &(&Scalar::ratio(-1, 2) * &Scalar::lambda(-4)),
        ));
        assert!(d.d_r[1].check_eq(&expected).holds(), "{}", d.d_r[1]);
        assert!(d.d_r[0].is_zero() && d.one.is_zero());
    }

    #[test]
    fn simple_pole_is_obstructed() {
        let c = curve();
        assert!(matches!(
            decompose(&c, &SuperField::z_pow(-1), 6),
            Err(Error::ResidueObstruction(_))
        ));
    }

    #[test]
    fn deep_pole_exceeds_depth() {
        let c = curve();
        assert!(matches!(
            decompose(&c, &SuperField::z_pow(-7), 6),
            Err(Error::DepthExceeded { .. })
        ));
    }

    #[test]
    fn class_of_one() {
        let c = curve();
        let k = reduce_coker(&c, &SuperField::one()).unwrap();
        let expected = CohClass::new(
            BaseFunction::zero(),
            BaseFunction::odd(-QSeries::one()),
        );
        assert!(k.check_eq(&expected).holds(), "{k}");
    }

    #[test]
    fn class_of_exact_function_vanishes() {
        let c = curve();
        let g = &c.x * &c.psi;
        assert!(reduce_coker(&c, &g.D()).unwrap().check_eq(&CohClass::zero()).holds());
    }

    #[test]
    fn gauss_manin_matrix() {
        let c = curve();
        let m = gm_connection(&c).unwrap();
        assert!(m.check_eq(&ConnectionMatrix::expected()).holds(), "{m}");
        for check in horizontal_check(&m).unwrap() {
            assert!(check.verdict.holds(), "{}: {}", check.id, check.verdict);
        }
        for check in period_relations(&c).unwrap() {
            assert!(check.verdict.holds(), "{}: {}", check.id, check.verdict);
        }
    }
}
