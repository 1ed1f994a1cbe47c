use supercurve::curve::Curve;
use supercurve::suite;
use supercurve::Config;

fn all_hold(config: Config) {
    let groups = suite::run(&Curve::new(config)).unwrap();
    for g in &groups {
        for c in &g.checks {
            assert!(c.verdict.holds(), "{config:?} {}/{}: {}", g.name, c.id, c.verdict);
        }
    }
}

#[test]
fn suite_holds_at_minimum_orders() {
    all_hold(Config { nz: 8, nq: 4, depth: 8 });
}

#[test]
fn suite_holds_at_default_orders() {
    all_hold(Config::default());
}
