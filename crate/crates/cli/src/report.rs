use std::collections::BTreeMap;
use std::fmt;

use apery::HpReal;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// A computed value with no check attached.
    Value,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Value => "value",
        })
    }
}

/// One machine-readable result line. JSON is canonical; the CSV form keeps
/// `parameters` as an embedded JSON object so it converts back without loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub outcome: Outcome,
    #[serde(default)]
    pub value: Option<String>,
    #[serde(default)]
    pub err_bound: Option<String>,
    #[serde(default)]
    pub detail: Option<String>,
    pub wall_time_seconds: f64,
    #[serde(default)]
    pub term_count: Option<u64>,
    #[serde(default)]
    pub digits: Option<u32>,
}

impl RunReport {
    pub fn new(command: &str, outcome: Outcome) -> Self {
        RunReport {
            command: command.into(),
            parameters: BTreeMap::new(),
            outcome,
            value: None,
            err_bound: None,
            detail: None,
            wall_time_seconds: 0.0,
            term_count: None,
            digits: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome != Outcome::Fail
    }
}

/// Error bound of `v` written exactly as `<ulps>e-<scale>`.
pub fn err_bound_string(v: &HpReal) -> String {
    format!("{}e-{}", v.err_ulps(), v.scale())
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CsvRow {
    command: String,
    parameters: String,
    outcome: Outcome,
    value: Option<String>,
    err_bound: Option<String>,
    detail: Option<String>,
    wall_time_seconds: f64,
    term_count: Option<u64>,
    digits: Option<u32>,
}

pub fn to_json(reports: &[RunReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn to_csv(reports: &[RunReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(CsvRow {
            command: r.command.clone(),
            parameters: serde_json::to_string(&r.parameters).expect("string map serializes"),
            outcome: r.outcome,
            value: r.value.clone(),
            err_bound: r.err_bound.clone(),
            detail: r.detail.clone(),
            wall_time_seconds: r.wall_time_seconds,
            term_count: r.term_count,
            digits: r.digits,
        })
        .expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}

#[cfg(test)]
pub fn from_csv(text: &str) -> Result<Vec<RunReport>, String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize::<CsvRow>()
        .map(|row| {
            let row = row.map_err(|e| e.to_string())?;
            Ok(RunReport {
                command: row.command,
                parameters: serde_json::from_str(&row.parameters).map_err(|e| e.to_string())?,
                outcome: row.outcome,
                value: row.value,
                err_bound: row.err_bound,
                detail: row.detail,
                wall_time_seconds: row.wall_time_seconds,
                term_count: row.term_count,
                digits: row.digits,
            })
        })
        .collect()
}
