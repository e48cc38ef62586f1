//! JSON and CSV report files.

use std::path::Path;
use std::str::FromStr;

use classbound_core::{LemmaCheckRecord, Mode};
use serde::Serialize;

use crate::campaign::CampaignReport;
use crate::error::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(HarnessError::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    lemma: &'a str,
    instance: &'a str,
    lhs: f64,
    rhs: f64,
    holds: bool,
    slack: f64,
    mode: Mode,
}

impl<'a> From<&'a LemmaCheckRecord> for CsvRow<'a> {
    fn from(r: &'a LemmaCheckRecord) -> Self {
        Self { lemma: &r.lemma, instance: &r.instance, lhs: r.lhs, rhs: r.rhs, holds: r.holds, slack: r.slack, mode: r.mode }
    }
}

pub fn to_json(report: &CampaignReport) -> Result<String, HarnessError> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<CampaignReport, HarnessError> {
    Ok(serde_json::from_str(text)?)
}

/// One row per record under the header `lemma,instance,lhs,rhs,holds,slack,mode`.
pub fn to_csv(report: &CampaignReport) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if report.records.is_empty() {
        w.write_record(["lemma", "instance", "lhs", "rhs", "holds", "slack", "mode"])?;
    }
    for r in &report.records {
        w.serialize(CsvRow::from(r))?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit_report(report: &CampaignReport, format: Format, path: &Path) -> Result<(), HarnessError> {
    let text = match format {
        Format::Json => to_json(report)?,
        Format::Csv => to_csv(report)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}
