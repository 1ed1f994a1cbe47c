use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use supercurve::cohomology::{decompose, recombine, reduce_coker, sbar_to_s, CohClass};
use supercurve::curve::Curve;
use supercurve::forms::{Gen, SuperForm};
use supercurve::scalars::{QSeries, Scalar};
use supercurve::superfield::{Mono, SuperField};
use supercurve::Config;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact Laurent polynomials in z with polynomial q-dependence.
fn field() -> impl Strategy<Value = SuperField> {
    prop::collection::vec((-3i32..=3, 0usize..4, prop::collection::vec(-4i64..=4, 1..3), -2i32..=2), 0..5)
        .prop_map(|terms| {
            terms.into_iter().fold(SuperField::zero(), |acc, (n, m, q, k)| {
                let q: Vec<_> = q.into_iter().map(rat).collect();
                &acc + &SuperField::term(n, Mono::ALL[m], QSeries::from_rationals(k, &q, None))
            })
        })
}

fn even_part(f: &SuperField) -> SuperField {
    f.restrict(&[Mono::One, Mono::ThetaPhi])
}

fn odd_part(f: &SuperField) -> SuperField {
    f.restrict(&[Mono::Theta, Mono::Phi])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_is_d_z(f in field()) {
        prop_assert_eq!(f.D().D(), f.d_z());
    }

    #[test]
    fn super_leibniz(f in field(), g in field()) {
        let lhs = (&f * &g).D();
        let rhs = &(&f.D() * &g) + &(&f.parity_flip() * &g.D());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivations_are_super_leibniz(f in field(), g in field()) {
        let fg = &f * &g;
        prop_assert_eq!(fg.d_theta(), &(&f.d_theta() * &g) + &(&f.parity_flip() * &g.d_theta()));
        prop_assert_eq!(fg.d_phi(), &(&f.d_phi() * &g) + &(&f.parity_flip() * &g.d_phi()));
        prop_assert_eq!(fg.d_z(), &(&f.d_z() * &g) + &(&f * &g.d_z()));
        prop_assert_eq!(fg.d_tau(), &(&f.d_tau() * &g) + &(&f * &g.d_tau()));
    }

    #[test]
    fn graded_commutativity(f in field(), g in field()) {
        let (fe, fo) = (even_part(&f), odd_part(&f));
        let (ge, go) = (even_part(&g), odd_part(&g));
        prop_assert_eq!(&fe * &g, &g * &fe);
        prop_assert_eq!(&fo * &ge, &ge * &fo);
        prop_assert_eq!(&fo * &go, -&(&go * &fo));
    }

    #[test]
    fn product_is_associative(f in field(), g in field(), h in field()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn exterior_derivative_squares_to_zero(f in field(), g in field(), h in field()) {
        let zero = SuperForm::function(f.clone()).d_total().unwrap().d_total().unwrap();
        prop_assert!(zero.is_zero());
        let one_form = &(&SuperForm::gen(Gen::Dz, f) + &SuperForm::gen(Gen::Dtheta, g))
            + &SuperForm::gen(Gen::Dphi, h);
        prop_assert!(one_form.d_total().unwrap().d_total().unwrap().is_zero());
    }

    #[test]
    fn delta_of_relative_differential_is_d(f in field()) {
        let b = SuperForm::function(f.clone()).d_rel().unwrap().delta().unwrap();
        prop_assert_eq!(b.0, f.D());
    }

    #[test]
    fn qseries_inverse(head in 1i64..5, tail in prop::collection::vec(-6i64..=6, 0..6), k in -3i32..=3) {
        let mut c = vec![rat(head)];
        c.extend(tail.into_iter().map(rat));
        let a = QSeries::from_rationals(k, &c, Some(6));
        let one = &a * &a.inv().unwrap();
        prop_assert!(one.check_eq(&QSeries::one()).holds());
    }

    #[test]
    fn qseries_ring_laws(
        a in prop::collection::vec(-5i64..=5, 1..5),
        b in prop::collection::vec(-5i64..=5, 1..5),
        c in prop::collection::vec(-5i64..=5, 1..5),
    ) {
        let s = |v: Vec<i64>, k| QSeries::from_rationals(k, &v.into_iter().map(rat).collect::<Vec<_>>(), Some(5));
        let (a, b, c) = (s(a, 1), s(b, -2), s(c, 0));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }
}

fn curve() -> &'static Curve {
    use std::sync::OnceLock;
    static CURVE: OnceLock<Curve> = OnceLock::new();
    CURVE.get_or_init(|| Curve::new(Config { nz: 12, nq: 4, depth: 6 }))
}

/// Random elements of the chart algebra with low pole order.
fn algebra_element() -> impl Strategy<Value = SuperField> {
    prop::collection::vec((0usize..6, -3i64..=3, any::<bool>()), 1..4).prop_map(|terms| {
        let c = curve();
        let basis = [
            SuperField::one(),
            c.x.clone(),
            c.psi.clone(),
            &c.x * &c.psi,
            c.y.clone(),
            &c.x * &c.x,
        ];
        terms.into_iter().fold(SuperField::zero(), |acc, (i, n, odd)| {
            let mut t = basis[i].mul_scalar(&Scalar::integer(n));
            if odd {
                t = &SuperField::phi() * &t;
            }
            &acc + &t
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_sections_have_zero_class(g in algebra_element()) {
        let c = curve();
        let class = reduce_coker(c, &sbar_to_s(c, &c.tilde_d(&g))).unwrap();
        prop_assert!(class.check_eq(&CohClass::zero()).holds(), "{}", class);
    }

    #[test]
    fn s_times_tilde_d_leaves_phi_term(g in algebra_element()) {
        // θφ·D(g) = D(θφg) − φg, so [s·D̃(g)] = [s·λ(E₂/12)φg].
        let c = curve();
        let lhs = reduce_coker(c, &c.tilde_d(&g)).unwrap();
        let k = &Scalar::ratio(1, 12) * &Scalar::lambda(1);
        let rhs = reduce_coker(c, &(&SuperField::phi() * &g).mul_qseries(&c.w.e2.mul_scalar(&k))).unwrap();
        prop_assert!(lhs.check_eq(&rhs).holds());
    }

    #[test]
    fn decomposition_round_trip(g in algebra_element()) {
        let c = curve();
        let d = decompose(c, &g, 6).unwrap();
        prop_assert!(recombine(c, &d).unwrap().check_eq(&g).holds());
    }
}
