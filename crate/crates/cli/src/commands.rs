//! The subcommands, each producing a report and a human-readable rendering.

use std::fmt::Write as _;
use std::time::Instant;

use num_complex::Complex64;
use serde_json::json;
use supercurve::cohomology::{gm_connection, reduce_coker, ConnectionMatrix};
use supercurve::curve::{Curve, CurveName};
use supercurve::scalars::{named_constant, NamedConstant};
use supercurve::suite;
use supercurve::superfield::{Mono, SuperField};
use supercurve::verdict::Check;
use supercurve::weierstrass::WName;
use supercurve::Config;
use supercurve_numeric::{
    duality_check, eval_basis_function, num_eval, period_quadrature, InvName, NumConfig, NumName,
};

use crate::error::{CliError, Result};
use crate::eval::evaluate;
use crate::expr::parse;
use crate::report::{CheckJson, ConfigJson, Report, SeriesJson};

/// Minimal orders at which `verify` is documented to pass.
pub const MIN_VERIFY_NQ: usize = 4;
pub const MIN_VERIFY_NZ: i32 = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub config: Config,
    pub tau: Complex64,
    pub tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            config: Config::default(),
            tau: NumConfig::default().tau,
            tol: NumConfig::default().tol,
        }
    }
}

impl Settings {
    fn num_config(&self) -> NumConfig {
        NumConfig {
            tau: self.tau,
            tol: self.tol,
            ..NumConfig::default()
        }
    }

    fn json(&self) -> ConfigJson {
        ConfigJson {
            nz: self.config.nz,
            nq: self.config.nq,
            depth: self.config.depth,
            tol: self.tol,
            tau: [self.tau.re, self.tau.im],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Verify,
    Expand { name: String, terms: usize },
    Reduce { expr: String },
    Gm,
    Eval { name: String, z: Complex64 },
    Periods { z_base: Complex64 },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Expand { .. } => "expand",
            Command::Reduce { .. } => "reduce",
            Command::Gm => "gm",
            Command::Eval { .. } => "eval",
            Command::Periods { .. } => "periods",
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub text: String,
}

pub fn run(cmd: &Command, s: &Settings) -> Result<Outcome> {
    let start = Instant::now();
    let (checks, output, text) = match cmd {
        Command::Verify => verify(s)?,
        Command::Expand { name, terms } => expand(s, name, *terms)?,
        Command::Reduce { expr } => reduce(s, expr)?,
        Command::Gm => gm(s)?,
        Command::Eval { name, z } => eval(s, name, *z)?,
        Command::Periods { z_base } => periods(s, *z_base)?,
    };
    Ok(Outcome {
        report: Report {
            command: cmd.name().to_string(),
            config: s.json(),
            checks,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
            output,
        },
        text,
    })
}

type Parts = (Vec<CheckJson>, Option<serde_json::Value>, String);

fn check_line(out: &mut String, group: &str, c: &Check) {
    let status = if c.verdict.holds() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{status} {group}/{}: {}", c.id, c.verdict);
    if let Some(n) = &c.note {
        let _ = writeln!(out, "     note: {n}");
    }
}

fn verify(s: &Settings) -> Result<Parts> {
    if s.config.nq < MIN_VERIFY_NQ || s.config.nz < MIN_VERIFY_NZ {
        return Err(CliError::Usage(format!(
            "verify needs --order-q >= {MIN_VERIFY_NQ} and --order-z >= {MIN_VERIFY_NZ}"
        )));
    }
    let curve = Curve::new(s.config);
    let groups = suite::run(&curve)?;
    let mut text = String::new();
    let mut checks = Vec::new();
    for g in &groups {
        for c in &g.checks {
            check_line(&mut text, g.name, c);
            checks.push(CheckJson::from_check(g.name, c));
        }
    }
    let passed = checks.iter().filter(|c| c.status == crate::report::Status::Pass).count();
    let _ = writeln!(text, "{passed}/{} checks pass", checks.len());
    Ok((checks, None, text))
}

/// A kernel object by name, or else the value of an expression.
pub fn resolve(curve: &Curve, name: &str) -> Result<SuperField> {
    if let Ok(w) = name.parse::<WName>() {
        return Ok(curve.w.get(w).value);
    }
    if let Ok(c) = name.parse::<CurveName>() {
        return Ok(curve.build(c).value);
    }
    if let Ok(c) = name.parse::<NamedConstant>() {
        return Ok(SuperField::constant(named_constant(c, curve.config().nq)));
    }
    evaluate(curve, &parse(name)?)
}

/// Terms as `coef * lambda^k * q^n * z^m * monomial`, in order of z, monomial, λ, q.
pub fn format_terms(f: &SuperField, limit: usize) -> Vec<String> {
    let mut out = Vec::new();
    for (n, g) in f.terms() {
        for m in Mono::ALL {
            for (k, coeffs) in g.get(m).to_rational_strings() {
                for (i, c) in coeffs.iter().enumerate() {
                    if c != "0" {
                        out.push(format!("{c} * lambda^{k} * q^{i} * z^{n} * {}", m.label()));
                        if out.len() == limit {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

fn expand(s: &Settings, name: &str, terms: usize) -> Result<Parts> {
    let curve = Curve::new(s.config);
    let f = resolve(&curve, name)?;
    let mut text = format_terms(&f, terms).join("\n");
    if text.is_empty() {
        text.push('0');
    }
    let z = f.z_prec().map_or("exact in z".into(), |p| format!("O(z^{p})"));
    let q = f.q_prec().map_or("exact in q".into(), |p| format!("O(q^{})", p + 1));
    let _ = write!(text, "\n+ {z}, {q}\n");
    let json = serde_json::to_value(SeriesJson::from_field(&f)).expect("serializable");
    Ok((vec![], Some(json), text))
}

fn reduce(s: &Settings, expr: &str) -> Result<Parts> {
    let curve = Curve::new(s.config);
    let f = evaluate(&curve, &parse(expr)?)?;
    let class = reduce_coker(&curve, &f)?;
    let json = json!({
        "psi1": class.psi1.to_string(),
        "psi2": class.psi2.to_string(),
    });
    Ok((vec![], Some(json), format!("{class}\n")))
}

fn gm(s: &Settings) -> Result<Parts> {
    let curve = Curve::new(s.config);
    let m = gm_connection(&curve)?;
    let check = Check::new("gm_matrix", m.check_eq(&ConnectionMatrix::expected()));
    let rows: Vec<_> = m
        .rows
        .iter()
        .map(|(t, p)| json!({ "dtau": t.to_string(), "dphi": p.to_string() }))
        .collect();
    let mut text = m.to_string();
    check_line(&mut text, "cohomology", &check);
    Ok((vec![CheckJson::from_check("cohomology", &check)], Some(json!(rows)), text))
}

fn complex_json(c: Complex64) -> serde_json::Value {
    json!([c.re, c.im])
}

fn eval(s: &Settings, name: &str, z: Complex64) -> Result<Parts> {
    let cfg = s.num_config();
    if let Ok(n) = name.parse::<NumName>() {
        let v = num_eval(n, z, &cfg)?;
        return Ok((vec![], Some(complex_json(v)), format!("{name}({z}) = {v}\n")));
    }
    let inv = InvName::ALL
        .into_iter()
        .find(|i| i.name() == name)
        .ok_or_else(|| CliError::Usage(format!("unknown function '{name}'")))?;
    let g = eval_basis_function(inv, z, &cfg)?;
    let json = json!(g.c.iter().copied().map(complex_json).collect::<Vec<_>>());
    Ok((vec![], Some(json), format!("{name}({z}, theta) = {g}\n")))
}

fn periods(s: &Settings, z_base: Complex64) -> Result<Parts> {
    let cfg = s.num_config();
    let p = period_quadrature(z_base, &cfg)?;
    let tol = cfg.tol.max(1e-8);
    let err = p.error(cfg.tau);
    let expected = [Complex64::new(1.0, 0.0), cfg.tau, Complex64::default(), Complex64::new(1.0, 0.0)];
    let mut text = String::new();
    for ((label, v), e) in ["alpha dz", "beta dz", "alpha zeta1' dz", "beta zeta1' dz"]
        .iter()
        .zip(p.as_array())
        .zip(expected)
    {
        let _ = writeln!(text, "{label:<16} {v:.12}   expected {e}");
    }
    let duality = duality_check(z_base, &cfg)?;
    let _ = writeln!(text, "{duality}");
    let checks = vec![
        CheckJson::numeric("numeric", "periods", err <= tol, format!("max error {err:.3e}")),
        CheckJson::numeric("numeric", &duality.id, duality.passed(), duality.to_string()),
    ];
    let json = json!(p.as_array().iter().copied().map(complex_json).collect::<Vec<_>>());
    Ok((checks, Some(json), text))
}
