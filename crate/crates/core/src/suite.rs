//! The complete symbolic identity suite, grouped by module.

use std::thread;

use crate::cohomology::{gm_connection, horizontal_check, period_relations, ConnectionMatrix};
use crate::curve::{leading_term_checks, Curve};
use crate::error::Result;
use crate::forms::lemma_checks;
use crate::geometry::{
    blowup_expansions, closure_check, commutator_check, coordinate_change_check, lift_form_checks,
    sbar_check,
};
use crate::verdict::{Check, Verdict};

/// Checks of one module.
#[derive(Clone, Debug)]
pub struct Group {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl Group {
    pub fn verdict(&self) -> Verdict {
        Verdict::all(self.checks.iter().map(|c| c.verdict.clone()))
    }
}

fn weierstrass(curve: &Curve) -> Result<Vec<Check>> {
    let mut out = curve.w.ramanujan_checks();
    out.extend(curve.w.identity_checks());
    Ok(out)
}

fn curve_group(curve: &Curve) -> Result<Vec<Check>> {
    let mut out = curve.check_all();
    out.extend(leading_term_checks(curve));
    Ok(out)
}

fn cohomology(curve: &Curve) -> Result<Vec<Check>> {
    let m = gm_connection(curve)?;
    let mut out = vec![Check::new("gm_matrix", m.check_eq(&ConnectionMatrix::expected()))];
    out.extend(horizontal_check(&m)?);
    out.extend(period_relations(curve)?);
    Ok(out)
}

fn geometry(curve: &Curve) -> Result<Vec<Check>> {
    let mut out = lift_form_checks(curve);
    out.extend(commutator_check(curve));
    out.extend(closure_check(curve)?.into_iter().map(|r| r.check));
    out.extend(blowup_expansions(curve)?.checks);
    out.extend(sbar_check(curve));
    out.extend(coordinate_change_check(curve)?);
    Ok(out)
}

type Runner = fn(&Curve) -> Result<Vec<Check>>;

const GROUPS: [(&str, Runner); 5] = [
    ("weierstrass", weierstrass),
    ("curve", curve_group),
    ("forms", lemma_checks),
    ("cohomology", cohomology),
    ("geometry", geometry),
];

/// Runs every group, concurrently, over the shared curve.
pub fn run(curve: &Curve) -> Result<Vec<Group>> {
    thread::scope(|s| {
        let handles: Vec<_> = GROUPS
            .iter()
            .map(|&(name, f)| (name, s.spawn(move || f(curve))))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| {
                let checks = h.join().expect("check thread panicked")?;
                Ok(Group { name, checks })
            })
            .collect()
    })
}
