use num_complex::Complex64;
use supercurve::weierstrass::{WName, Weierstrass};
use supercurve::Config;
use supercurve_numeric::lattice::quasi_periods;
use supercurve_numeric::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn assert_passed(checks: &[NumericCheck]) {
    for ch in checks {
        assert!(ch.passed(), "{ch}");
    }
}

#[test]
fn legendre_at_three_taus() {
    for tau in [c(0.0, 1.0), c(0.3, 1.2), c(-0.4, 0.9)] {
        assert_passed(&legendre_check(&NumConfig::with_tau(tau)).unwrap());
    }
}

#[test]
fn eta1_square_lattice() {
    let (eta1, _) = quasi_periods(c(0.23, 0.11), &NumConfig::with_tau(c(0.0, 1.0))).unwrap();
    assert!((eta1 - std::f64::consts::PI).norm() < 1e-9, "{eta1}");
}

#[test]
fn eta1_unchanged_by_tau_plus_one() {
    let z = c(0.23, 0.11);
    let (a, _) = quasi_periods(z, &NumConfig::with_tau(c(2.0, 1.2))).unwrap();
    let (b, _) = quasi_periods(z, &NumConfig::with_tau(c(0.3 + 1.7, 1.2))).unwrap();
    // τ and τ − 2 span the same lattice.
    let (d, _) = quasi_periods(z, &NumConfig::with_tau(c(0.0, 1.2))).unwrap();
    assert!((a - b).norm() < 1e-9 && (a - d).norm() < 1e-9, "{a} {b} {d}");
}

#[test]
fn quasi_periodicity() {
    assert_passed(&quasi_periodicity_check(c(0.23, 0.11), &NumConfig::default()).unwrap());
}

#[test]
fn invariance_of_basis_functions() {
    let cfg = NumConfig::default();
    let z0 = c(0.23, 0.11);
    assert_passed(&invariance_check(InvName::Psi1, z0, &cfg).unwrap());
    assert_passed(&invariance_check(InvName::Psi2, z0, &cfg).unwrap());
    let theta = invariance_check(InvName::Theta, z0, &cfg).unwrap();
    assert!(theta[0].passed());
    assert!(!theta[1].passed(), "theta moves to theta + phi");
}

#[test]
fn periods_and_duality() {
    let cfg = NumConfig::default();
    let p = period_quadrature(c(0.37, 0.23), &cfg).unwrap();
    assert_eq!(p.alpha_dz, c(1.0, 0.0));
    assert!(p.error(cfg.tau) < 1e-8, "{p:?}");
    assert!(duality_check(c(0.37, 0.23), &cfg).unwrap().passed());
}

#[test]
fn segment_through_pole() {
    let cfg = NumConfig::default();
    assert!(matches!(
        period_quadrature(c(-0.5, 0.0), &cfg),
        Err(NumError::SegmentThroughPole { .. })
    ));
}

#[test]
fn symbolic_series_agree_with_numeric_values() {
    let w = Weierstrass::new(Config { nz: 20, nq: 16, depth: 8 });
    // |q| = 0.05 and |q| ≈ 5e-4
    let taus = [c(0.1, (20f64).ln() / (2.0 * std::f64::consts::PI)), c(0.3, 1.2)];
    for tau in taus {
        let ev = Evaluator::new(NumConfig::with_tau(tau)).unwrap();
        for z in [c(0.1, 0.0), c(0.0, 0.1), Complex64::from_polar(0.1, 0.7)] {
            let v = ev.values(z).unwrap();
            for (name, num) in [
                (WName::Wp, v.wp),
                (WName::Zeta1, v.zeta1),
                (WName::Zeta1Prime, v.zeta1_prime),
                (WName::Zeta1Dot, v.zeta1_dot),
                (WName::WpDot, v.wp_dot),
            ] {
                let sym = eval_field(&w.get(name).value, z, tau);
                assert!((sym.c[0] - num).norm() < 1e-9, "{name:?} at {z}, {tau}: {} vs {num}", sym.c[0]);
                assert_eq!(sym.c[1], Complex64::default());
            }
        }
    }
}
