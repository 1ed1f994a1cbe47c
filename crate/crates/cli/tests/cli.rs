use std::process::Command as Proc;

use num_bigint::BigInt;
use proptest::prelude::*;
use supercurve::curve::Curve;
use supercurve::Config;
use supercurve_cli::commands::resolve;
use supercurve_cli::expr::{BinOp, Ident, Op};
use supercurve_cli::report::SeriesJson;
use supercurve_cli::{parse, run, Command, Expr, Report, Settings};

fn small() -> Settings {
    Settings {
        config: Config { nz: 10, nq: 4, depth: 8 },
        ..Settings::default()
    }
}

fn bin() -> Proc {
    Proc::new(env!("CARGO_BIN_EXE_supercurve"))
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..50).prop_map(|n| Expr::Num(BigInt::from(n))),
        proptest::sample::select(Ident::ALL.to_vec()).prop_map(Expr::Ident),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let op = proptest::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div]);
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone())
                .prop_map(|(o, a, b)| Expr::Bin(o, Box::new(a), Box::new(b))),
            (inner.clone(), -3i64..4).prop_map(|(e, n)| Expr::Pow(Box::new(e), n)),
            (proptest::sample::select(Op::ALL.to_vec()), inner)
                .prop_map(|(o, e)| Expr::Apply(o, Box::new(e))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn print_then_parse_is_stable(e in arb_expr()) {
        let printed = e.to_string();
        let reparsed = parse(&printed).unwrap();
        prop_assert_eq!(&reparsed, &e, "printed as {}", printed);
        prop_assert_eq!(parse(&reparsed.to_string()).unwrap(), reparsed);
    }
}

#[test]
fn series_json_round_trips() {
    let curve = Curve::new(small().config);
    for name in ["x", "y", "psi", "Psi2", "E2", "1 + phi*Psi2"] {
        let Ok(f) = resolve(&curve, name) else {
            continue;
        };
        let json = SeriesJson::from_field(&f);
        let text = serde_json::to_string(&json).unwrap();
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json, "{name}");
        let g = back.to_field().unwrap();
        assert!(g.check_eq(&f).holds(), "{name}");
        assert_eq!((g.z_prec(), g.q_prec()), (f.z_prec(), f.q_prec()), "{name}");
    }
}

#[test]
fn report_json_round_trips() {
    let out = run(&Command::Gm, &small()).unwrap();
    let text = serde_json::to_string_pretty(&out.report).unwrap();
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, out.report);
}

#[test]
fn reduce_one_is_minus_phi_psi2() {
    let out = run(&Command::Reduce { expr: "1".into() }, &small()).unwrap();
    let json = out.report.output.unwrap();
    assert_eq!(json["psi1"], "0");
    let psi2 = json["psi2"].as_str().unwrap();
    assert!(psi2.starts_with("phi*[(-1)"), "{psi2}");
}

#[test]
fn gm_has_single_entry() {
    let out = run(&Command::Gm, &small()).unwrap();
    assert_eq!(out.report.exit_code(), 0);
    assert!(out.text.contains("PASS cohomology/gm_matrix"));
}

#[test]
fn verify_at_minimum_orders_exits_zero() {
    let st = bin()
        .args(["verify", "--order-q", "4", "--order-z", "8"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stdout));
}

#[test]
fn verify_below_minimum_is_usage_error() {
    let st = bin().args(["verify", "--order-q", "3"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}

#[test]
fn syntax_error_exits_two_with_column() {
    let st = bin().args(["reduce", "x^^2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&st.stderr).contains("column 3"));
}

#[test]
fn expand_prints_requested_terms_and_json() {
    let dir = std::env::temp_dir().join(format!("supercurve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.json");
    let st = bin()
        .args(["expand", "x", "--terms", "3", "--order-q", "4", "--order-z", "8", "--json"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    let text = String::from_utf8_lossy(&st.stdout);
    assert!(text.starts_with("1 * lambda^-4 * q^0 * z^-2 * 1\n"), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains(" * z^")).count(), 3);
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let series: SeriesJson = serde_json::from_value(report.output.unwrap()).unwrap();
    assert_eq!(series.z_min, Some(-2));
    assert_eq!(series.q_order, Some(4));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn eval_and_periods_run() {
    let st = bin().args(["eval", "wp", "--z", "0.2,0.1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = bin().args(["eval", "Psi2", "--z", "0.2,0.1", "--tau", "0.1,1.1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = bin().args(["periods", "--tau", "-0.2,0.9"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stdout));
    let st = bin().args(["eval", "nosuch", "--z", "0.2,0.1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}

#[test]
fn unknown_identifier_is_reported() {
    let err = run(&Command::Reduce { expr: "x + foo".into() }, &small()).err().unwrap();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("foo"));
}
