//! Table writers. Both formats are byte-stable for identical input.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SweepRecord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Format {
    #[default]
    #[serde(rename = "csv")]
    Csv,
    #[serde(rename = "json-lines")]
    JsonLines,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json-lines" | "jsonl" => Ok(Format::JsonLines),
            _ => Err(Error::Config(format!("unknown output format {s:?}"))),
        }
    }
}

pub const CSV_HEADER: &str = "x,y,work,q_hot,q_cold,regime";

/// Twelve significant digits.
fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        "NaN".to_string()
    }
}

/// Header plus one row per record; failed points carry `NaN` energies and
/// the label `failed`.
pub fn write_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let [w, qh, qc] = r.energies().unwrap_or([f64::NAN; 3]);
        let label = r.regime().map_or("failed", |g| g.name());
        let _ = writeln!(out, "{},{},{},{},{},{label}", num(r.x), num(r.y), num(w), num(qh), num(qc));
    }
    out
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    x: f64,
    y: f64,
    work: Option<f64>,
    q_hot: Option<f64>,
    q_cold: Option<f64>,
    regime: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

/// One JSON object per line with the CSV field names; failed points have
/// `null` energies and an `error` message.
pub fn write_json_lines(records: &[SweepRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let e = r.energies();
        let rec = JsonRecord {
            x: r.x,
            y: r.y,
            work: e.map(|e| e[0]),
            q_hot: e.map(|e| e[1]),
            q_cold: e.map(|e| e[2]),
            regime: r.regime().map_or("failed", |g| g.name()),
            error: r.outcome.as_ref().err().map(String::as_str),
        };
        out.push_str(&serde_json::to_string(&rec).expect("plain record serializes"));
        out.push('\n');
    }
    out
}

pub fn emit(records: &[SweepRecord], format: Format, path: &Path) -> Result<()> {
    let text = match format {
        Format::Csv => write_csv(records),
        Format::JsonLines => write_json_lines(records),
    };
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
