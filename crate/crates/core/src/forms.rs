//! Differential forms on the chart with generators `dz, dθ, dτ, dφ`.
//!
//! Forms are sums of normal-ordered monomials with [`SuperField`]
//! coefficients written to their right. Every generator has cohomological
//! degree 1; `dz, dτ` are even and `dθ, dφ` are odd. Swapping two symbols
//! costs `(−1)^{deg·deg + par·par}`, so `dz∧dz = 0` while `dθ∧dθ ≠ 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::superfield::SuperField;
use crate::verdict::{Check, Verdict};

/// Highest form degree represented. Degree 3 is only reached by `d` of a
/// 2-form, which the `d² = 0` checks need.
pub const MAX_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Dz,
    Dtheta,
    Dtau,
    Dphi,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::Dz, Gen::Dtheta, Gen::Dtau, Gen::Dphi];
    pub const RELATIVE: [Gen; 2] = [Gen::Dz, Gen::Dtheta];

    pub fn is_odd(self) -> bool {
        matches!(self, Gen::Dtheta | Gen::Dphi)
    }

    pub fn label(self) -> &'static str {
        match self {
            Gen::Dz => "dz",
            Gen::Dtheta => "dtheta",
            Gen::Dtau => "dtau",
            Gen::Dphi => "dphi",
        }
    }

    /// The coordinate derivative paired with this differential.
    fn partial(self, f: &SuperField) -> SuperField {
        match self {
            Gen::Dz => f.d_z(),
            Gen::Dtheta => f.d_theta(),
            Gen::Dtau => f.d_tau(),
            Gen::Dphi => f.d_phi(),
        }
    }
}

/// Sign of swapping two adjacent degree-1 generators.
fn swap_sign(a: Gen, b: Gen) -> i32 {
    if a.is_odd() && b.is_odd() {
        1
    } else {
        -1
    }
}

/// `dz^a dθ^b dτ^c dφ^d` in normal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormMono {
    exps: [u8; 4],
}

impl FormMono {
    pub const ONE: FormMono = FormMono { exps: [0; 4] };

    pub fn gen(g: Gen) -> Self {
        let mut exps = [0; 4];
        exps[g as usize] = 1;
        FormMono { exps }
    }

    pub fn exponent(&self, g: Gen) -> u8 {
        self.exps[g as usize]
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    /// Parity of the monomial as a product of generators.
    pub fn is_odd(&self) -> bool {
        (self.exps[Gen::Dtheta as usize] + self.exps[Gen::Dphi as usize]) % 2 == 1
    }

    fn sequence(&self) -> Vec<Gen> {
        Gen::ALL
            .iter()
            .flat_map(|&g| std::iter::repeat_n(g, self.exps[g as usize] as usize))
            .collect()
    }

    /// Normal-ordered product `self · other` with its sign; `None` when it vanishes.
    pub fn mul(&self, other: &FormMono) -> Result<Option<(i32, FormMono)>> {
        let mut seq = self.sequence();
        seq.extend(other.sequence());
        if seq.len() > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded(seq.len()));
        }
        let mut sign = 1;
        // Bubble sort keeps the sign bookkeeping mechanical.
        for i in 0..seq.len() {
            for j in 0..seq.len() - 1 - i {
                if seq[j] > seq[j + 1] {
                    sign *= swap_sign(seq[j], seq[j + 1]);
                    seq.swap(j, j + 1);
                }
            }
        }
        let mut exps = [0u8; 4];
        for g in seq {
            exps[g as usize] += 1;
        }
        if exps[Gen::Dz as usize] > 1 || exps[Gen::Dtau as usize] > 1 {
            return Ok(None);
        }
        Ok(Some((sign, FormMono { exps })))
    }

    /// True when built only from `dτ, dφ`.
    pub fn is_base(&self) -> bool {
        self.exps[Gen::Dz as usize] == 0 && self.exps[Gen::Dtheta as usize] == 0 && self.degree() > 0
    }
}

impl fmt::Display for FormMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Gen::ALL
            .iter()
            .filter(|&&g| self.exponent(g) > 0)
            .map(|&g| match self.exponent(g) {
                1 => g.label().to_string(),
                e => format!("{}^{e}", g.label()),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// `Σ monomial · coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuperForm {
    terms: BTreeMap<FormMono, SuperField>,
}

impl SuperForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A 0-form.
    pub fn function(f: SuperField) -> Self {
        Self::term(FormMono::ONE, f)
    }

    /// `m · f`.
    pub fn term(m: FormMono, f: SuperField) -> Self {
        let mut out = SuperForm::zero();
        out.add_term(m, f);
        out
    }

    /// `dg · f`.
    pub fn gen(g: Gen, f: SuperField) -> Self {
        Self::term(FormMono::gen(g), f)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(SuperField::is_zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormMono, &SuperField)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &FormMono) -> SuperField {
        self.terms.get(m).cloned().unwrap_or_else(SuperField::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .filter(|(_, f)| !f.is_zero())
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    /// Inexact zeros are kept so that their truncation orders reach verdicts.
    fn add_term(&mut self, m: FormMono, f: SuperField) {
        let sum = match self.terms.remove(&m) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() || sum.z_prec().is_some() || sum.q_prec().is_some() {
            self.terms.insert(m, sum);
        }
    }

    /// `u ∧ v`; coefficients of `u` are moved past the monomials of `v`.
    pub fn wedge(&self, other: &SuperForm) -> Result<SuperForm> {
        let mut out = SuperForm::zero();
        for (m1, f1) in &self.terms {
            for (m2, f2) in &other.terms {
                let Some((sign, m)) = m1.mul(m2)? else {
                    continue;
                };
                let f1 = if m2.is_odd() { f1.parity_flip() } else { f1.clone() };
                let mut c = &f1 * f2;
                if sign < 0 {
                    c = -c;
                }
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    fn d_over(&self, gens: &[Gen]) -> Result<SuperForm> {
        let mut out = SuperForm::zero();
        for (m, f) in &self.terms {
            if m.degree() + 1 > MAX_DEGREE {
                return Err(Error::DegreeCapExceeded(m.degree() + 1));
            }
            let outer = if m.degree() % 2 == 1 { -1 } else { 1 };
            for &g in gens {
                let p = g.partial(f);
                if p.is_zero() {
                    continue;
                }
                let Some((sign, mm)) = m.mul(&FormMono::gen(g))? else {
                    continue;
                };
                out.add_term(mm, if sign * outer < 0 { -p } else { p });
            }
        }
        Ok(out)
    }

    /// Total de Rham differential `d = Σ dxⁱ ∂ᵢ` (left derivatives).
    pub fn d_total(&self) -> Result<SuperForm> {
        self.d_over(&Gen::ALL)
    }

    /// Relative differential over the base: only `dz, dθ`.
    pub fn d_rel(&self) -> Result<SuperForm> {
        self.d_over(&Gen::RELATIVE)
    }

    /// `δ(dθ·a + dz·b) = s·(a + θb)` for a relative 1-form.
    pub fn delta(&self) -> Result<Berezin> {
        let mut a = SuperField::zero();
        for (m, f) in &self.terms {
            if *m == FormMono::gen(Gen::Dtheta) {
                a = &a + f;
            } else if *m == FormMono::gen(Gen::Dz) {
                a = &a + &f.theta_times();
            } else {
                return Err(Error::NoSolutionAtOrder(format!(
                    "delta expects a relative 1-form, found the monomial {m}"
                )));
            }
        }
        Ok(Berezin(a))
    }

    /// Compares all coefficients with another form.
    pub fn check_eq(&self, other: &SuperForm) -> Verdict {
        let monos: std::collections::BTreeSet<&FormMono> =
            self.terms.keys().chain(other.terms.keys()).collect();
        Verdict::all(
            monos
                .into_iter()
                .map(|m| self.coefficient(m).check_eq(&other.coefficient(m))),
        )
    }
}

impl Add for &SuperForm {
    type Output = SuperForm;
    fn add(self, rhs: &SuperForm) -> SuperForm {
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.add_term(*m, f.clone());
        }
        out
    }
}

impl Neg for &SuperForm {
    type Output = SuperForm;
    fn neg(self) -> SuperForm {
        SuperForm {
            terms: self.terms.iter().map(|(m, f)| (*m, -f)).collect(),
        }
    }
}

impl Sub for &SuperForm {
    type Output = SuperForm;
    fn sub(self, rhs: &SuperForm) -> SuperForm {
        self + &(-rhs)
    }
}

impl fmt::Display for SuperForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().filter(|(_, c)| !c.is_zero()).enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}*({c})")?;
        }
        Ok(())
    }
}

/// `s · a`, a section of the relative Berezinian with `s = δ(θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Berezin(pub SuperField);

/// `α = dz − dθ·θ`, the kernel direction of `δ`, times `f`.
pub fn alpha_times(f: &SuperField) -> SuperForm {
    &SuperForm::gen(Gen::Dz, f.clone()) - &SuperForm::gen(Gen::Dtheta, f.theta_times())
}

/// The closed relative 1-form `ω` with `δ(ω) = s·a`: `ω = dθ·a + α·D(a)`.
pub fn closure_solve(a: &SuperField) -> Result<SuperForm> {
    let omega = &SuperForm::gen(Gen::Dtheta, a.clone()) + &alpha_times(&a.D());
    let back = omega.delta()?.0;
    if let Verdict::Fails(d) = back.check_eq(a) {
        return Err(Error::NoSolutionAtOrder(format!("delta mismatch at {d}")));
    }
    let closed = omega.d_rel()?;
    for (_, c) in closed.terms() {
        if let Verdict::Fails(d) = c.check_zero() {
            return Err(Error::NoSolutionAtOrder(format!("not closed at {d}")));
        }
    }
    Ok(omega)
}

/// Applies the reduction `mod (α·Ω¹ + Ω²_S)` followed by `δ ⊗ id` to a 2-form.
///
/// After `dz = α + dθ·θ`, what survives is `dθdτ·f_τ + dθdφ·f_φ`, which is
/// rewritten with the base differential on the left as
/// `dτ∧(−dθ f_τ) + dφ∧(dθ f_φ)`. Returns the Berezinian classes
/// `(s·(−f_τ), s·f_φ)`.
pub fn gm_reduce(w: &SuperForm) -> Result<(Berezin, Berezin)> {
    if w.degree() > 2 {
        return Err(Error::DegreeCapExceeded(w.degree()));
    }
    let mut reduced = SuperForm::zero();
    for (m, f) in w.terms() {
        if m.degree() < 2 || m.is_base() {
            continue;
        }
        if m.exponent(Gen::Dz) == 1 {
            // dz·g·f = α·g·f + dθ·θ·g·f and θ·g = ± g·θ.
            let rest = m.sequence_without(Gen::Dz);
            let g_odd = rest.is_odd();
            let mut c = f.theta_times();
            if g_odd {
                c = -c;
            }
            if let Some((sign, mm)) = FormMono::gen(Gen::Dtheta).mul(&rest)? {
                reduced.add_term(mm, if sign < 0 { -c } else { c });
            }
        } else {
            reduced.add_term(*m, f.clone());
        }
    }
    let dtheta2 = FormMono { exps: [0, 2, 0, 0] };
    let res = reduced.coefficient(&dtheta2);
    if let Verdict::Fails(d) = res.check_zero() {
        return Err(Error::ResidualRelativeTwoForm(d.to_string()));
    }
    let tau = FormMono { exps: [0, 1, 1, 0] };
    let phi = FormMono { exps: [0, 1, 0, 1] };
    // dθ dτ = −dτ dθ (even past odd), dθ dφ = dφ dθ (odd past odd).
    Ok((
        Berezin(-reduced.coefficient(&tau)),
        Berezin(reduced.coefficient(&phi)),
    ))
}

impl FormMono {
    fn sequence_without(&self, g: Gen) -> FormMono {
        let mut exps = self.exps;
        exps[g as usize] -= 1;
        FormMono { exps }
    }
}

/// Names of the explicit lifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lift {
    Omega1,
    Omega2,
    Omega1Tilde,
    Omega2Tilde,
}

/// The relative forms `ω₁, ω₂` and their absolute lifts `ω̃₁, ω̃₂`.
pub fn build_lift(curve: &Curve, which: Lift) -> SuperForm {
    let w = &curve.w;
    let theta = SuperField::theta();
    let phi = SuperField::phi();
    let tp = SuperField::theta_phi();
    let one = SuperField::one();
    let omega1 = &SuperForm::gen(Gen::Dtheta, &theta - &(&phi * &w.zeta1))
        + &alpha_times(&(&one - &(&tp * &w.zeta1_prime)));
    let omega2 = &SuperForm::gen(
        Gen::Dtheta,
        &(&phi * &w.zeta1_dot) + &(&theta * &w.zeta1_prime),
    ) + &alpha_times(&(&w.zeta1_prime + &(&tp * &w.zeta1_dot_prime)));
    match which {
        Lift::Omega1 => omega1,
        Lift::Omega2 => omega2,
        Lift::Omega1Tilde => {
            let two = crate::scalars::Scalar::integer(2);
            &(&omega1 + &SuperForm::gen(Gen::Dphi, &theta * &w.zeta1))
                - &SuperForm::gen(
                    Gen::Dtau,
                    &w.zeta1 + &(&tp * &w.zeta1_dot).mul_scalar(&two),
                )
        }
        Lift::Omega2Tilde => {
            let zeta1_ddot = w.zeta1_dot.d_tau();
            &(&omega2 - &SuperForm::gen(Gen::Dphi, &theta * &w.zeta1_dot))
                + &SuperForm::gen(Gen::Dtau, &w.zeta1_dot + &(&tp * &zeta1_ddot))
        }
    }
}

/// The Lemma's checks: `δ(ωᵢ) = sΨᵢ`, `d_rel(ωᵢ) = 0`, and agreement with
/// [`closure_solve`].
pub fn lemma_checks(curve: &Curve) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (lift, psi, name) in [
        (Lift::Omega1, &curve.psi1, "omega1"),
        (Lift::Omega2, &curve.psi2, "omega2"),
    ] {
        let omega = build_lift(curve, lift);
        out.push(Check::new(format!("delta_{name}"), omega.delta()?.0.check_eq(psi)));
        let closed = omega.d_rel()?;
        out.push(Check::new(
            format!("closed_{name}"),
            closed.check_eq(&SuperForm::zero()),
        ));
        out.push(Check::new(
            format!("closure_solve_{name}"),
            closure_solve(psi)?.check_eq(&omega),
        ));
    }
    Ok(out)
}
