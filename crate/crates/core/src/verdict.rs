//! Three-valued outcomes of identity checks.

use std::fmt;

/// Location and value of the first coefficient where two sides disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub z_exp: Option<i32>,
    pub monomial: Option<&'static str>,
    pub q_exp: usize,
    pub lambda_exp: i32,
    pub value: String,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(z) = self.z_exp {
            write!(f, "z^{z} ")?;
        }
        if let Some(m) = self.monomial {
            write!(f, "{m} ")?;
        }
        write!(f, "q^{} lambda^{}: {}", self.q_exp, self.lambda_exp, self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Difference vanishes on every known coefficient. `None` means exact.
    Holds {
        z_prec: Option<i32>,
        q_prec: Option<usize>,
    },
    Fails(Discrepancy),
    InsufficientAccuracy(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    /// Combines verdicts: any failure wins, then any accuracy shortfall.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Holds {
            z_prec: None,
            q_prec: None,
        };
        for v in verdicts {
            out = match (out, v) {
                (f @ Verdict::Fails(_), _) => f,
                (_, f @ Verdict::Fails(_)) => f,
                (i @ Verdict::InsufficientAccuracy(_), _) => i,
                (_, i @ Verdict::InsufficientAccuracy(_)) => i,
                (
                    Verdict::Holds { z_prec: a, q_prec: b },
                    Verdict::Holds { z_prec: c, q_prec: d },
                ) => Verdict::Holds {
                    z_prec: min_opt(a, c),
                    q_prec: min_opt(b, d),
                },
            };
        }
        out
    }
}

fn min_opt<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds { z_prec, q_prec } => {
                write!(f, "holds")?;
                match (z_prec, q_prec) {
                    (None, None) => write!(f, " exactly"),
                    (z, q) => {
                        write!(f, " to")?;
                        if let Some(z) = z {
                            write!(f, " O(z^{z})")?;
                        }
                        if let Some(q) = q {
                            write!(f, " O(q^{})", q + 1)?;
                        }
                        Ok(())
                    }
                }
            }
            Verdict::Fails(d) => write!(f, "fails at {d}"),
            Verdict::InsufficientAccuracy(why) => write!(f, "insufficient accuracy: {why}"),
        }
    }
}

/// A named check with its verdict and an optional remark for the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, verdict: Verdict) -> Self {
        Check {
            id: id.into(),
            verdict,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}
