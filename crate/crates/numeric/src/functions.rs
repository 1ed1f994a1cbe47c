//! Weierstrass data from the product expansion of the odd theta function.
//!
//! With `u = e^{2πiz}`, `a = qⁿ`,
//! `F(z) = ζ(z) − η₁z = π cot πz + 2πi Σₙ [a u⁻¹/(1 − a u⁻¹) − a u/(1 − a u)]`,
//! which converges for every `z` off the lattice since `|qⁿ u^{±1}| → 0`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{NumError, Result};
use crate::NumConfig;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn two_pi_i() -> Complex64 {
    I * 2.0 * PI
}

/// `cot w` computed from whichever of `e^{±2iw}` is small.
pub(crate) fn cot(w: Complex64) -> Complex64 {
    if w.im >= 0.0 {
        let e = (I * 2.0 * w).exp();
        I * (e + 1.0) / (e - 1.0)
    } else {
        let e = (-I * 2.0 * w).exp();
        I * (1.0 + e) / (1.0 - e)
    }
}

/// `1/sin² w`.
pub(crate) fn csc2(w: Complex64) -> Complex64 {
    let e = if w.im >= 0.0 { (I * 2.0 * w).exp() } else { (-I * 2.0 * w).exp() };
    -4.0 * e / ((e - 1.0) * (e - 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumName {
    Wp,
    WpPrime,
    WpDot,
    Zeta,
    Zeta1,
    Zeta1Prime,
    Zeta1Dot,
    Zeta1DotPrime,
}

impl NumName {
    pub const ALL: [NumName; 8] = [
        NumName::Wp,
        NumName::WpPrime,
        NumName::WpDot,
        NumName::Zeta,
        NumName::Zeta1,
        NumName::Zeta1Prime,
        NumName::Zeta1Dot,
        NumName::Zeta1DotPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NumName::Wp => "wp",
            NumName::WpPrime => "wp_prime",
            NumName::WpDot => "wp_dot",
            NumName::Zeta => "zeta",
            NumName::Zeta1 => "zeta1",
            NumName::Zeta1Prime => "zeta1_prime",
            NumName::Zeta1Dot => "zeta1_dot",
            NumName::Zeta1DotPrime => "zeta1_dot_prime",
        }
    }
}

impl fmt::Display for NumName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NumName {
    type Err = NumError;
    fn from_str(s: &str) -> Result<Self> {
        NumName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| NumError::InvalidConfig(format!("unknown function {s}")))
    }
}

/// All named values at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Values {
    pub wp: Complex64,
    pub wp_prime: Complex64,
    pub wp_dot: Complex64,
    pub zeta: Complex64,
    pub zeta1: Complex64,
    pub zeta1_prime: Complex64,
    pub zeta1_dot: Complex64,
    pub zeta1_dot_prime: Complex64,
    /// Bound on the neglected tail.
    pub error: f64,
}

impl Values {
    pub fn get(&self, name: NumName) -> Complex64 {
        match name {
            NumName::Wp => self.wp,
            NumName::WpPrime => self.wp_prime,
            NumName::WpDot => self.wp_dot,
            NumName::Zeta => self.zeta,
            NumName::Zeta1 => self.zeta1,
            NumName::Zeta1Prime => self.zeta1_prime,
            NumName::Zeta1Dot => self.zeta1_dot,
            NumName::Zeta1DotPrime => self.zeta1_dot_prime,
        }
    }
}

/// Lattice-dependent constants, computed once per τ.
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub cfg: NumConfig,
    pub q: Complex64,
    pub e2: Complex64,
    /// `η₁ = π²E₂/3`, the quasi-period of ζ along 1.
    pub eta1: Complex64,
    /// `∂τ η₁`.
    pub eta1_dot: Complex64,
}

impl Evaluator {
    pub fn new(cfg: NumConfig) -> Result<Self> {
        cfg.validate()?;
        let q = cfg.q();
        // E₂ = 1 − 24 Σ n qⁿ/(1 − qⁿ);  q dE₂/dq = −24 Σ n² qⁿ/(1 − qⁿ)².
        let (mut s1, mut s2) = (Complex64::default(), Complex64::default());
        let mut a = Complex64::new(1.0, 0.0);
        let mut converged = false;
        for n in 1..=cfg.cutoff {
            a *= q;
            let nf = n as f64;
            let t1 = nf * a / (1.0 - a);
            let t2 = nf * nf * a / ((1.0 - a) * (1.0 - a));
            s1 += t1;
            s2 += t2;
            if t2.norm() < cfg.tol * 1e-4 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(NumError::ConvergenceFailure {
                terms: cfg.cutoff,
                estimate: f64::NAN,
                tol: cfg.tol,
            });
        }
        let e2 = 1.0 - 24.0 * s1;
        let e2_dot = two_pi_i() * (-24.0) * s2;
        Ok(Evaluator {
            cfg,
            q,
            e2,
            eta1: PI * PI * e2 / 3.0,
            eta1_dot: PI * PI * e2_dot / 3.0,
        })
    }

    /// Distance from `z` to the nearest lattice point.
    pub fn lattice_distance(&self, z: Complex64) -> f64 {
        let tau = self.cfg.tau;
        let m0 = (z.im / tau.im).round() as i64;
        let mut best = f64::INFINITY;
        for m in m0 - 1..=m0 + 1 {
            let w = z - tau * m as f64;
            let n0 = w.re.round() as i64;
            for n in n0 - 1..=n0 + 1 {
                best = best.min((w - n as f64).norm());
            }
        }
        best
    }

    pub fn values(&self, z: Complex64) -> Result<Values> {
        if self.lattice_distance(z) < 1e-8 {
            return Err(NumError::PoleAt { z });
        }
        let tpi = two_pi_i();
        let u = (tpi * z).exp();
        let ui = 1.0 / u;
        let w = PI * z;
        let (ct, cs2) = (cot(w), csc2(w));
        // F, F′, F″, ∂τF, ∂τF′
        let mut f = PI * ct;
        let mut f1 = -PI * PI * cs2;
        let mut f2 = 2.0 * PI.powi(3) * ct * cs2;
        let mut ft = Complex64::default();
        let mut ft1 = Complex64::default();
        let mut a = Complex64::new(1.0, 0.0);
        let mut estimate = f64::INFINITY;
        let mut n = 0;
        while n < self.cfg.cutoff {
            n += 1;
            a *= self.q;
            let nf = n as f64;
            let (p, m) = (a * u, a * ui);
            let (dp, dm) = (1.0 - p, 1.0 - m);
            let g0 = m / dm - p / dp;
            let g1 = m / (dm * dm) + p / (dp * dp);
            let g2 = p * (1.0 + p) / (dp * dp * dp) - m * (1.0 + m) / (dm * dm * dm);
            let h0 = m / (dm * dm) - p / (dp * dp);
            let h1 = m * (1.0 + m) / (dm * dm * dm) + p * (1.0 + p) / (dp * dp * dp);
            let terms = [
                tpi * g0,
                4.0 * PI * PI * g1,
                4.0 * PI * PI * tpi * g2,
                tpi * tpi * nf * h0,
                4.0 * PI * PI * tpi * nf * h1,
            ];
            f += terms[0];
            f1 += terms[1];
            f2 += terms[2];
            ft += terms[3];
            ft1 += terms[4];
            let size = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
            let ratio = a.norm() * u.norm().max(ui.norm());
            if ratio < 0.5 {
                // Geometric tail with ratio ≤ |q|·(n+1)³/n³ once terms decay.
                estimate = 2.0 * size * self.q.norm() * 8.0;
                if estimate < self.cfg.tol * 1e-2 {
                    break;
                }
            }
        }
        if estimate >= self.cfg.tol * 1e-2 {
            return Err(NumError::ConvergenceFailure {
                terms: n,
                estimate,
                tol: self.cfg.tol,
            });
        }
        let zeta = f + self.eta1 * z;
        let wp = -(f1 + self.eta1);
        Ok(Values {
            wp,
            wp_prime: -f2,
            wp_dot: -(ft1 + self.eta1_dot),
            zeta,
            zeta1: -f / tpi,
            zeta1_prime: -f1 / tpi,
            zeta1_dot: -ft / tpi,
            zeta1_dot_prime: -ft1 / tpi,
            error: estimate,
        })
    }
}

/// One named function at `z₀`.
pub fn num_eval(name: NumName, z0: Complex64, cfg: &NumConfig) -> Result<Complex64> {
    Ok(Evaluator::new(*cfg)?.values(z0)?.get(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta1_on_square_lattice_is_pi() {
        let ev = Evaluator::new(NumConfig::with_tau(I)).unwrap();
        assert!((ev.eta1 - PI).norm() < 1e-12, "{}", ev.eta1);
    }

    #[test]
    fn laurent_head_of_wp() {
        let ev = Evaluator::new(NumConfig::default()).unwrap();
        let z = Complex64::new(1e-3, 2e-3);
        let v = ev.values(z).unwrap();
        assert!((v.wp * z * z - 1.0).norm() < 1e-5);
        assert!((v.zeta * z - 1.0).norm() < 1e-5);
    }

    #[test]
    fn derivatives_by_finite_differences() {
        let cfg = NumConfig::default();
        let ev = Evaluator::new(cfg).unwrap();
        let z = Complex64::new(0.23, 0.11);
        let h = 1e-5;
        let v = ev.values(z).unwrap();
        let dz = |g: fn(&Values) -> Complex64| {
            (g(&ev.values(z + h).unwrap()) - g(&ev.values(z - h).unwrap())) / (2.0 * h)
        };
        assert!((dz(|v| v.zeta) + v.wp).norm() < 1e-6);
        assert!((dz(|v| v.wp) - v.wp_prime).norm() < 1e-5);
        let shifted = |d: f64| {
            Evaluator::new(NumConfig::with_tau(cfg.tau + d))
                .unwrap()
                .values(z)
                .unwrap()
        };
        let dt = (shifted(h).wp - shifted(-h).wp) / (2.0 * h);
        assert!((dt - v.wp_dot).norm() < 1e-5, "{dt} {}", v.wp_dot);
        let dt = (shifted(h).zeta1 - shifted(-h).zeta1) / (2.0 * h);
        assert!((dt - v.zeta1_dot).norm() < 1e-6);
    }

    #[test]
    fn pole_is_reported() {
        let cfg = NumConfig::default();
        assert!(matches!(
            num_eval(NumName::Wp, cfg.tau + 1.0, &cfg),
            Err(NumError::PoleAt { .. })
        ));
    }
}
