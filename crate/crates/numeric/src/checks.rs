//! Numeric verdicts with explicit error and tolerance.

use std::fmt;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{NumError, Result};
use crate::functions::{Evaluator, Values};
use crate::grass::GrassNum;
use crate::lattice::quasi_periods;
use crate::NumConfig;

/// Outcome of a floating-point comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericCheck {
    pub id: String,
    pub error: f64,
    pub tol: f64,
    pub detail: String,
}

impl NumericCheck {
    pub fn new(id: impl Into<String>, error: f64, tol: f64, detail: impl Into<String>) -> Self {
        NumericCheck {
            id: id.into(),
            error,
            tol,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_finite() && self.error <= self.tol
    }
}

impl fmt::Display for NumericCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: error {:.3e} (tol {:.0e}) {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.error,
            self.tol,
            self.detail
        )
    }
}

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * std::f64::consts::PI)
}

/// Reference point used when a check needs some `z` off the lattice.
const Z_REF: Complex64 = Complex64::new(0.23, 0.11);

/// `τη₁ − η₂ = 2πi` with both quasi-periods taken from the lattice sum, and
/// agreement of that `η₁` with `π²E₂/3` from the q-series.
pub fn legendre_check(cfg: &NumConfig) -> Result<Vec<NumericCheck>> {
    let (eta1, eta2) = quasi_periods(Z_REF, cfg)?;
    let ev = Evaluator::new(*cfg)?;
    Ok(vec![
        NumericCheck::new(
            "legendre",
            (cfg.tau * eta1 - eta2 - two_pi_i()).norm(),
            cfg.tol,
            format!("tau = {}, eta1 = {eta1}, eta2 = {eta2}", cfg.tau),
        ),
        NumericCheck::new(
            "eta1_lattice_vs_qseries",
            (eta1 - ev.eta1).norm(),
            cfg.tol,
            format!("tau = {}", cfg.tau),
        ),
    ])
}

/// `ζ₁(z+1) = ζ₁(z)`, `ζ₁(z+τ) = ζ₁(z) + 1`, `ζ̇₁(z+τ) = ζ̇₁(z) − ζ₁′(z)`,
/// and double periodicity of ℘.
pub fn quasi_periodicity_check(z: Complex64, cfg: &NumConfig) -> Result<Vec<NumericCheck>> {
    let ev = Evaluator::new(*cfg)?;
    let v = ev.values(z)?;
    let v1 = ev.values(z + 1.0)?;
    let vt = ev.values(z + cfg.tau)?;
    let one = Complex64::new(1.0, 0.0);
    let detail = format!("z = {z}, tau = {}", cfg.tau);
    let check = |id: &str, e: Complex64| NumericCheck::new(id, e.norm(), cfg.tol, detail.clone());
    Ok(vec![
        check("zeta1_shift_1", v1.zeta1 - v.zeta1),
        check("zeta1_shift_tau", vt.zeta1 - v.zeta1 - one),
        check("zeta1_dot_shift_tau", vt.zeta1_dot - v.zeta1_dot + v.zeta1_prime),
        check("wp_shift_1", v1.wp - v.wp),
        check("wp_shift_tau", vt.wp - v.wp),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvName {
    Psi1,
    Psi2,
    /// `θ` alone, which the second generator moves to `θ + φ`.
    Theta,
}

impl InvName {
    pub const ALL: [InvName; 3] = [InvName::Psi1, InvName::Psi2, InvName::Theta];

    pub fn name(self) -> &'static str {
        match self {
            InvName::Psi1 => "Psi1",
            InvName::Psi2 => "Psi2",
            InvName::Theta => "theta",
        }
    }
}

fn eval_at(ev: &Evaluator, name: InvName, z: GrassNum, theta: GrassNum) -> Result<GrassNum> {
    let v: Values = ev.values(z.body())?;
    let phi = GrassNum::phi();
    // ζ₁″ = ℘′/(2πi)
    let zeta1_pp = v.wp_prime / two_pi_i();
    Ok(match name {
        InvName::Psi1 => theta - phi * z.compose(v.zeta1, v.zeta1_prime),
        InvName::Psi2 => {
            phi * z.compose(v.zeta1_dot, v.zeta1_dot_prime) + theta * z.compose(v.zeta1_prime, zeta1_pp)
        }
        InvName::Theta => theta,
    })
}

/// The function at the point `(z₀, θ)`, as a Grassmann number.
pub fn eval_basis_function(name: InvName, z0: Complex64, cfg: &NumConfig) -> Result<GrassNum> {
    let ev = Evaluator::new(*cfg)?;
    eval_at(&ev, name, GrassNum::scalar(z0), GrassNum::theta())
}

/// Invariance under `(z, θ) ↦ (z+1, θ)` and `(z, θ) ↦ (z+τ+θφ, θ+φ)`,
/// compared on all four Grassmann components.
pub fn invariance_check(name: InvName, z0: Complex64, cfg: &NumConfig) -> Result<Vec<NumericCheck>> {
    let ev = Evaluator::new(*cfg)?;
    let theta = GrassNum::theta();
    let z = GrassNum::scalar(z0);
    let base = eval_at(&ev, name, z, theta)?;
    let shift1 = eval_at(&ev, name, GrassNum::scalar(z0 + 1.0), theta)?;
    let shift_tau = eval_at(
        &ev,
        name,
        GrassNum::scalar(z0 + cfg.tau) + GrassNum::theta_phi(),
        theta + GrassNum::phi(),
    )?;
    let detail = format!("z0 = {z0}, tau = {}", cfg.tau);
    Ok(vec![
        NumericCheck::new(format!("{}_shift_1", name.name()), shift1.distance(&base), cfg.tol, detail.clone()),
        NumericCheck::new(format!("{}_shift_tau", name.name()), shift_tau.distance(&base), cfg.tol, detail),
    ])
}

/// Integrals of `dz` and `ζ₁′dz` over `α = [z, z+1]` and `β = [z, z+τ]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Periods {
    pub alpha_dz: Complex64,
    pub beta_dz: Complex64,
    pub alpha_zeta1_prime: Complex64,
    pub beta_zeta1_prime: Complex64,
}

impl Periods {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.alpha_dz, self.beta_dz, self.alpha_zeta1_prime, self.beta_zeta1_prime]
    }

    /// Largest deviation from `(1, τ, 0, 1)`.
    pub fn error(&self, tau: Complex64) -> f64 {
        let expected = [Complex64::new(1.0, 0.0), tau, Complex64::default(), Complex64::new(1.0, 0.0)];
        self.as_array()
            .iter()
            .zip(expected)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Minimal sampled distance from the segment `[a, b]` to the lattice.
fn segment_clearance(ev: &Evaluator, a: Complex64, b: Complex64) -> f64 {
    (0..=512)
        .map(|k| ev.lattice_distance(a + (b - a) * (k as f64 / 512.0)))
        .fold(f64::INFINITY, f64::min)
}

fn integrate(
    ev: &Evaluator,
    rule: &GaussLegendre,
    a: Complex64,
    b: Complex64,
    g: impl Fn(&Values) -> Complex64,
) -> Result<Complex64> {
    let clearance = segment_clearance(ev, a, b);
    if clearance < 1e-2 {
        return Err(NumError::SegmentThroughPole {
            from: a,
            to: b,
            distance: clearance,
        });
    }
    let half = (b - a) / 2.0;
    let mid = (a + b) / 2.0;
    let mut acc = Complex64::default();
    for &(x, w) in rule.as_node_weight_pairs() {
        acc += g(&ev.values(mid + half * x)?) * w;
    }
    Ok(acc * half)
}

pub fn period_quadrature(z_base: Complex64, cfg: &NumConfig) -> Result<Periods> {
    let ev = Evaluator::new(*cfg)?;
    let nodes = NonZeroUsize::new(cfg.nodes).ok_or_else(|| NumError::InvalidConfig("nodes = 0".into()))?;
    let rule = GaussLegendre::new(nodes);
    let (a1, b1) = (z_base, z_base + 1.0);
    let (a2, b2) = (z_base, z_base + cfg.tau);
    Ok(Periods {
        alpha_dz: b1 - a1,
        beta_dz: b2 - a2,
        alpha_zeta1_prime: integrate(&ev, &rule, a1, b1, |v| v.zeta1_prime)?,
        beta_zeta1_prime: integrate(&ev, &rule, a2, b2, |v| v.zeta1_prime)?,
    })
}

/// `e₀ = (1 − τζ₁′)dz` and `f₀ = ζ₁′dz` are dual to `(α, β)`.
pub fn duality_check(z_base: Complex64, cfg: &NumConfig) -> Result<NumericCheck> {
    let p = period_quadrature(z_base, cfg)?;
    let tau = cfg.tau;
    let matrix = [
        [p.alpha_dz - tau * p.alpha_zeta1_prime, p.beta_dz - tau * p.beta_zeta1_prime],
        [p.alpha_zeta1_prime, p.beta_zeta1_prime],
    ];
    let mut err: f64 = 0.0;
    for (i, row) in matrix.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let id = if i == j { 1.0 } else { 0.0 };
            err = err.max((x - id).norm());
        }
    }
    Ok(NumericCheck::new("e0_f0_duality", err, cfg.tol.max(1e-8), format!("tau = {tau}")))
}
