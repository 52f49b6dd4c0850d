//! Report serialization. CSV columns are
//! `theorem,p,r,modulus,lhs_residue,rhs_residue,pass,note`; missing values
//! are empty fields. JSON is an object with `metadata` and `verdicts`.

use std::fmt::Write as _;

use thiserror::Error;

use super::sweep::SweepReport;
use super::Verdict;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv output is not utf-8")]
    Utf8(#[from] std::string::FromUtf8Error),
}

pub fn to_csv(verdicts: &[Verdict]) -> Result<String, ReportError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for verdict in verdicts {
        writer.serialize(verdict)?;
    }
    if verdicts.is_empty() {
        writer.write_record([
            "theorem",
            "p",
            "r",
            "modulus",
            "lhs_residue",
            "rhs_residue",
            "pass",
            "note",
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes)?)
}

pub fn from_csv(text: &str) -> Result<Vec<Verdict>, ReportError> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(ReportError::from)
}

pub fn to_json(report: &SweepReport) -> Result<String, ReportError> {
    let mut out = serde_json::to_string_pretty(report)?;
    out.push('\n');
    Ok(out)
}

pub fn to_text(verdicts: &[Verdict]) -> String {
    let mut out = String::new();
    for verdict in verdicts {
        let _ = writeln!(out, "{verdict}");
    }
    out
}
