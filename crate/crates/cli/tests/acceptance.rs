//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestRunner};

use supercurve::cohomology::{decompose, recombine, reduce_coker, sbar_to_s, CohClass};
use supercurve::curve::Curve;
use supercurve::forms::{Gen, SuperForm};
use supercurve::geometry::closure_check;
use supercurve::scalars::{QSeries, Scalar};
use supercurve::suite::{self, Group};
use supercurve::superfield::{Mono, SuperField};
use supercurve::verdict::Check;
use supercurve::weierstrass::WName;
use supercurve::Config;
use supercurve_numeric::{
    eval_field, invariance_check, legendre_check, period_quadrature, Evaluator, InvName, NumConfig,
};

const SUITE_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_CASES: u32 = 100;
const INVARIANCE_POINTS: u32 = 20;
const INVARIANCE_TOL: f64 = 1e-9;
const PERIOD_TOL: f64 = 1e-8;
const LEGENDRE_TOL: f64 = 1e-9;
const CROSS_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn find<'a>(groups: &'a [Group], id: &str) -> &'a Check {
    groups
        .iter()
        .flat_map(|g| &g.checks)
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("no check named {id}"))
}

fn all_hold(groups: &[Group], ids: &[&str]) -> Outcome {
    let failing: Vec<_> = ids
        .iter()
        .map(|id| find(groups, id))
        .filter(|c| !c.verdict.holds())
        .map(|c| format!("{}: {}", c.id, c.verdict))
        .collect();
    Outcome {
        pass: failing.is_empty(),
        detail: if failing.is_empty() {
            format!("{} checks exact", ids.len())
        } else {
            failing.join("; ")
        },
    }
}

fn identity_suite(groups: &[Group], elapsed: Duration) -> Outcome {
    let ids = ["DPsi1", "DPsi2", "Psi2eq", "DRx", "D3Ry", "Dpsi", "cubic"];
    let mut out = all_hold(groups, &ids);
    out.pass &= elapsed < SUITE_BUDGET;
    out.detail = format!("{}; full suite in {:.1}s", out.detail, elapsed.as_secs_f64());
    out
}

fn kodaira_spencer(curve: &Curve, groups: &[Group]) -> Outcome {
    let ids = [
        "commutator_D_tau",
        "anticommutator_D_phi",
        "closure_D_tau_Psi1",
        "closure_D_tau_Psi2",
        "closure_D_phi_psi",
        "closure_D_phi_Psi2",
    ];
    let mut out = all_hold(groups, &ids);
    match closure_check(curve) {
        Ok(rs) => {
            let bad: Vec<_> = rs.iter().filter(|r| !r.quasimodular).map(|r| r.check.id.clone()).collect();
            out.pass &= bad.is_empty();
            if !bad.is_empty() {
                out.detail = format!("{}; not quasimodular: {}", out.detail, bad.join(", "));
            }
        }
        Err(e) => {
            out.pass = false;
            out.detail = e.to_string();
        }
    }
    out
}

fn blowup(groups: &[Group]) -> Outcome {
    let ids = [
        "blowup_inv_y",
        "blowup_x_over_y",
        "blowup_psi_over_y",
        "blowup_phi_prime",
        "blowup_phi_prime_y",
        "coordinate_x_over_y_lead",
    ];
    let mut out = all_hold(groups, &ids);
    let flagged = find(groups, "coordinate_x_over_y_lead").note.is_some();
    out.pass &= flagged;
    out.detail = format!("{}; x/y lead flagged: {flagged}", out.detail);
    out
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn field() -> impl Strategy<Value = SuperField> {
    prop::collection::vec((-3i32..=3, 0usize..4, prop::collection::vec(-4i64..=4, 1..3), -2i32..=2), 0..5)
        .prop_map(|terms| {
            terms.into_iter().fold(SuperField::zero(), |acc, (n, m, q, k)| {
                let q: Vec<_> = q.into_iter().map(rat).collect();
                &acc + &SuperField::term(n, Mono::ALL[m], QSeries::from_rationals(k, &q, None))
            })
        })
}

fn algebra_element(curve: &Curve) -> impl Strategy<Value = SuperField> {
    let basis = [
        SuperField::one(),
        curve.x.clone(),
        curve.psi.clone(),
        &curve.x * &curve.psi,
        curve.y.clone(),
        &curve.x * &curve.x,
        &curve.y * &curve.psi,
    ];
    prop::collection::vec((0usize..basis.len(), -3i64..=3, any::<bool>()), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(SuperField::zero(), |acc, (i, n, odd)| {
            let mut t = basis[i].mul_scalar(&Scalar::integer(n));
            if odd {
                t = &SuperField::phi() * &t;
            }
            &acc + &t
        })
    })
}

fn runner() -> TestRunner {
    TestRunner::new(PtConfig {
        cases: RANDOM_CASES,
        failure_persistence: None,
        ..PtConfig::default()
    })
}

fn properties() -> Outcome {
    let curve = Curve::new(Config { nz: 14, nq: 4, depth: 8 });
    let mut failures = Vec::new();

    let exact = runner().run(&algebra_element(&curve), |g| {
        let class = reduce_coker(&curve, &sbar_to_s(&curve, &curve.tilde_d(&g)))
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(class.check_eq(&CohClass::zero()).holds(), "{}", class);
        Ok(())
    });
    let round_trip = runner().run(&algebra_element(&curve), |g| {
        let d = decompose(&curve, &g, 8).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let back = recombine(&curve, &d).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(back.check_eq(&g).holds());
        Ok(())
    });
    let forms = runner().run(&(field(), field(), field()), |(f, g, h)| {
        let zero = SuperForm::function(f.clone()).d_total().unwrap().d_total().unwrap();
        prop_assert!(zero.is_zero());
        let one = &(&SuperForm::gen(Gen::Dz, f.clone()) + &SuperForm::gen(Gen::Dtheta, g.clone()))
            + &SuperForm::gen(Gen::Dphi, h);
        prop_assert!(one.d_total().unwrap().d_total().unwrap().is_zero());
        let lhs = (&f * &g).D();
        let rhs = &(&f.D() * &g) + &(&f.parity_flip() * &g.D());
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
    for (name, r) in [
        ("exact sections", exact.map_err(|e| e.to_string())),
        ("decompose round trip", round_trip.map_err(|e| e.to_string())),
        ("d^2 and Leibniz", forms.map_err(|e| e.to_string())),
    ] {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("3 x {RANDOM_CASES} random cases, class of sbar*Dt(g) zero")
        } else {
            failures.join("; ")
        },
    }
}

fn invariance() -> Outcome {
    let strategy = (-0.5f64..0.5, 0.8f64..2.0, 0.1f64..0.9, 0.1f64..0.9);
    let worst = std::cell::Cell::new(0.0f64);
    let mut runner = TestRunner::new(PtConfig {
        cases: INVARIANCE_POINTS,
        failure_persistence: None,
        ..PtConfig::default()
    });
    let result = runner.run(&strategy, |(re, im, a, b)| {
        let tau = Complex64::new(re, im);
        let z0 = a + b * tau;
        let cfg = NumConfig { tol: INVARIANCE_TOL, ..NumConfig::with_tau(tau) };
        for name in [InvName::Psi1, InvName::Psi2] {
            let checks = invariance_check(name, z0, &cfg).map_err(|e| TestCaseError::fail(e.to_string()))?;
            for c in checks {
                worst.set(worst.get().max(c.error));
                prop_assert!(c.error <= INVARIANCE_TOL, "{c}");
            }
        }
        Ok(())
    });
    Outcome {
        pass: result.is_ok(),
        detail: match result {
            Ok(()) => format!("{INVARIANCE_POINTS} points, max error {:.2e}", worst.get()),
            Err(e) => e.to_string(),
        },
    }
}

fn periods_and_legendre() -> Outcome {
    let taus = [Complex64::new(0.0, 1.0), Complex64::new(0.3, 1.2), Complex64::new(-0.4, 0.9)];
    let mut problems = Vec::new();
    let (mut period_err, mut legendre_err, mut cross_err) = (0.0f64, 0.0f64, 0.0f64);
    for tau in taus {
        let cfg = NumConfig { tol: LEGENDRE_TOL, ..NumConfig::with_tau(tau) };
        match period_quadrature(Complex64::new(0.37, 0.23), &cfg) {
            Ok(p) => period_err = period_err.max(p.error(tau)),
            Err(e) => problems.push(e.to_string()),
        }
        match legendre_check(&cfg) {
            Ok(cs) => cs.iter().for_each(|c| legendre_err = legendre_err.max(c.error)),
            Err(e) => problems.push(e.to_string()),
        }
    }
    // Symbolic series against direct evaluation, at |q| = 0.05 and a smaller |q|.
    let w = supercurve::weierstrass::Weierstrass::new(Config::default());
    for tau in [Complex64::new(0.1, (20f64).ln() / (2.0 * PI)), Complex64::new(-0.2, 0.9)] {
        let ev = match Evaluator::new(NumConfig::with_tau(tau)) {
            Ok(ev) => ev,
            Err(e) => {
                problems.push(e.to_string());
                continue;
            }
        };
        for k in 0..8 {
            let z = Complex64::from_polar(0.1, 0.3 + k as f64 * PI / 4.0);
            match ev.values(z) {
                Ok(v) => {
                    for (name, num) in [(WName::Wp, v.wp), (WName::Zeta1, v.zeta1)] {
                        let sym = eval_field(&w.get(name).value, z, tau).c[0];
                        cross_err = cross_err.max((sym - num).norm());
                    }
                }
                Err(e) => problems.push(e.to_string()),
            }
        }
    }
    let pass = problems.is_empty()
        && period_err <= PERIOD_TOL
        && legendre_err <= LEGENDRE_TOL
        && cross_err <= CROSS_TOL;
    Outcome {
        pass,
        detail: format!(
            "periods {period_err:.2e}, Legendre {legendre_err:.2e}, series vs direct {cross_err:.2e}{}",
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
        ),
    }
}

fn main() -> ExitCode {
    // The harness passes libtest flags; a listing request expects no output.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let curve = Curve::new(Config { nz: 20, nq: 16, depth: 8 });
    let groups = suite::run(&curve).expect("identity suite runs");
    let elapsed = start.elapsed();

    let results = [
        ("identity suite", identity_suite(&groups, elapsed)),
        (
            "Ramanujan and Weierstrass identities",
            all_hold(
                &groups,
                &[
                    "ramanujan_E2",
                    "ramanujan_E4",
                    "ramanujan_E6",
                    "weierstrass_zeta1",
                    "weierstrass_wp",
                    "weierstrass_wp_prime",
                ],
            ),
        ),
        (
            "Gauss-Manin connection",
            all_hold(
                &groups,
                &["gm_matrix", "nabla_e", "nabla_f", "nabla_tau_f", "period_s", "period_s_theta_phi"],
            ),
        ),
        ("Kodaira-Spencer lifts", kodaira_spencer(&curve, &groups)),
        ("blow-up charts", blowup(&groups)),
        ("property suites", properties()),
        ("numeric invariance", invariance()),
        ("numeric periods and Legendre", periods_and_legendre()),
    ];

    let mut ok = true;
    for (i, (name, r)) in results.iter().enumerate() {
        ok &= r.pass;
        println!("{} {}. {name}: {}", if r.pass { "PASS" } else { "FAIL" }, i + 1, r.detail);
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
