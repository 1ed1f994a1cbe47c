//! Machine-readable reports and the series JSON schema.

use serde::{Deserialize, Serialize};
use supercurve::scalars::{parse_rational, QSeries};
use supercurve::superfield::{Mono, SuperField};
use supercurve::verdict::{Check, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub z_exp: i32,
    pub monomial: String,
    pub lambda_exp: i32,
    pub q_coeffs: Vec<String>,
}

/// Exact serialization of a super field; rationals as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    /// Last known q-exponent; `None` when exact.
    pub q_order: Option<usize>,
    pub z_min: Option<i32>,
    /// Last known z-exponent, or the last nonzero one for exact fields.
    pub z_max: Option<i32>,
    /// True when no z-truncation applies.
    #[serde(default)]
    pub exact_in_z: bool,
    pub terms: Vec<SeriesTerm>,
}

impl SeriesJson {
    pub fn from_field(f: &SuperField) -> Self {
        let mut terms = Vec::new();
        for (n, g) in f.terms() {
            for m in Mono::ALL {
                for (k, q_coeffs) in g.get(m).to_rational_strings() {
                    terms.push(SeriesTerm {
                        z_exp: n,
                        monomial: m.label().to_string(),
                        lambda_exp: k,
                        q_coeffs,
                    });
                }
            }
        }
        let last = f.terms().last().map(|(n, _)| n);
        SeriesJson {
            q_order: f.q_prec(),
            z_min: f.valuation(),
            z_max: f.z_prec().map(|p| p - 1).or(last),
            exact_in_z: f.z_prec().is_none(),
            terms,
        }
    }

    /// Rebuilds the field; fails on an unknown monomial or a malformed rational.
    pub fn to_field(&self) -> Result<SuperField, String> {
        let mut f = SuperField::zero();
        for t in &self.terms {
            let m = Mono::from_label(&t.monomial)
                .ok_or_else(|| format!("unknown monomial '{}'", t.monomial))?;
            let coeffs = t
                .q_coeffs
                .iter()
                .map(|c| parse_rational(c).ok_or_else(|| format!("bad rational '{c}'")))
                .collect::<Result<Vec<_>, _>>()?;
            let s = QSeries::from_rationals(t.lambda_exp, &coeffs, self.q_order);
            f = &f + &SuperField::term(t.z_exp, m, s);
        }
        let z_prec = if self.exact_in_z { None } else { self.z_max.map(|m| m + 1) };
        Ok(f.with_z_prec(z_prec).with_q_prec(self.q_order))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub nz: i32,
    pub nq: usize,
    pub depth: usize,
    pub tol: f64,
    pub tau: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    InsufficientAccuracy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyJson {
    pub z_exp: Option<i32>,
    pub monomial: Option<String>,
    pub q_exp: usize,
    pub lambda_exp: i32,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub group: String,
    pub id: String,
    pub status: Status,
    pub verdict: String,
    pub discrepancy: Option<DiscrepancyJson>,
    pub note: Option<String>,
}

impl CheckJson {
    pub fn from_check(group: &str, c: &Check) -> Self {
        let (status, discrepancy) = match &c.verdict {
            Verdict::Holds { .. } => (Status::Pass, None),
            Verdict::Fails(d) => (
                Status::Fail,
                Some(DiscrepancyJson {
                    z_exp: d.z_exp,
                    monomial: d.monomial.map(str::to_string),
                    q_exp: d.q_exp,
                    lambda_exp: d.lambda_exp,
                    value: d.value.clone(),
                }),
            ),
            Verdict::InsufficientAccuracy(_) => (Status::InsufficientAccuracy, None),
        };
        CheckJson {
            group: group.to_string(),
            id: c.id.clone(),
            status,
            verdict: c.verdict.to_string(),
            discrepancy,
            note: c.note.clone(),
        }
    }

    pub fn numeric(group: &str, id: &str, passed: bool, detail: String) -> Self {
        CheckJson {
            group: group.to_string(),
            id: id.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            verdict: detail,
            discrepancy: None,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: ConfigJson,
    pub checks: Vec<CheckJson>,
    pub timing_ms: f64,
    pub output: Option<serde_json::Value>,
}

impl Report {
    /// 0 when everything passes, 1 on any failure, 3 on an accuracy shortfall.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::InsufficientAccuracy) {
            3
        } else {
            0
        }
    }
}
