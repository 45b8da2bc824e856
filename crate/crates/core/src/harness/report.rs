use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::catalog::{Family, Params};
use crate::error::{Error, Result};

use super::OutputFormat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
            Status::Error => "error",
        }
    }
}

/// First failing term. `value` is `lhs - sign·rhs` at term `n` (the
/// coefficient itself for vanishing claims), reduced in the claim's ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: u64,
    #[serde(serialize_with = "integer")]
    pub value: BigInt,
}

/// Integers that fit in 64 bits are written as numbers, larger ones as
/// decimal strings.
fn integer<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub params: Params,
    pub status: Status,
    pub n_checked: u64,
    pub truncation: u64,
    pub counterexample: Option<Counterexample>,
    pub elapsed_ms: u64,
    pub message: Option<String>,
    #[serde(skip)]
    pub family: Option<Family>,
    /// Statement in the usual notation; empty when no claim could be built.
    #[serde(skip)]
    pub notation: String,
    /// Checked range `n_min..=n_max`.
    #[serde(skip)]
    pub range: Option<(u64, u64)>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Vacuous)
    }

    pub(crate) fn rejected(family: Option<Family>, id: String, params: Params, error: &Error) -> Self {
        let status = match error {
            Error::Vacuous(_) => Status::Vacuous,
            _ => Status::Error,
        };
        VerificationReport {
            claim_id: id,
            params,
            status,
            n_checked: 0,
            truncation: 0,
            counterexample: None,
            elapsed_ms: 0,
            message: Some(error.to_string()),
            family,
            notation: String::new(),
            range: None,
        }
    }

    /// One line of text output, e.g.
    /// `C6[b=6]  B_5(10n+6) ≡ 0 (mod 2): PASS n≤500`.
    pub fn text_line(&self) -> String {
        let head = if self.notation.is_empty() {
            self.claim_id.clone()
        } else {
            format!("{:<26} {}", self.claim_id, self.notation)
        };
        let range = match self.range {
            Some((0, hi)) => format!("n≤{hi}"),
            Some((lo, hi)) => format!("{lo}≤n≤{hi}"),
            None => String::new(),
        };
        let message = self.message.as_deref().unwrap_or("");
        match (self.status, &self.counterexample) {
            (Status::Pass, _) => format!("{head}: PASS {range}"),
            (Status::Fail, Some(c)) => {
                format!("{head}: FAIL at n={} (value {}) {message}", c.n, c.value).trim_end().to_string()
            }
            (Status::Fail, None) => format!("{head}: FAIL {message}"),
            (Status::Vacuous, _) => format!("{head}: VACUOUS ({message})"),
            (Status::Error, _) => format!("{head}: ERROR ({message})"),
        }
    }
}

/// Renders reports as text lines, a JSON array, or CSV.
pub fn render_reports(reports: &[VerificationReport], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for r in reports {
                let _ = writeln!(out, "{}", r.text_line());
            }
            let failed = reports.iter().filter(|r| !r.is_ok()).count();
            let _ =
                writeln!(out, "{} claims, {} passed, {} not passing", reports.len(), reports.len() - failed, failed);
            Ok(out)
        }
        OutputFormat::Json => serde_json::to_string_pretty(reports)
            .map(|s| s + "\n")
            .map_err(|e| Error::InvalidParameter(format!("json encoding failed: {e}"))),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::InvalidParameter(format!("csv encoding failed: {e}"));
            w.write_record([
                "claim_id",
                "status",
                "n_checked",
                "truncation",
                "counterexample_n",
                "counterexample_value",
                "elapsed_ms",
                "message",
            ])
            .map_err(csv_err)?;
            for r in reports {
                let (cn, cv) = match &r.counterexample {
                    Some(c) => (c.n.to_string(), c.value.to_string()),
                    None => (String::new(), String::new()),
                };
                w.write_record([
                    r.claim_id.as_str(),
                    r.status.as_str(),
                    &r.n_checked.to_string(),
                    &r.truncation.to_string(),
                    &cn,
                    &cv,
                    &r.elapsed_ms.to_string(),
                    r.message.as_deref().unwrap_or(""),
                ])
                .map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv encoding failed: {e}")))?;
            String::from_utf8(bytes).map_err(|e| Error::InvalidParameter(e.to_string()))
        }
    }
}
