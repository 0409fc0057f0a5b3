use super::{CaseRecord, Params, StatementId};
use crate::error::{Error, Result};
use crate::padic::Outcome;
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;
use std::str::FromStr;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub held: usize,
    pub failed: usize,
    pub inapplicable: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub parameters: Params,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub statement: Option<StatementId>,
    pub records: Vec<CaseRecord>,
    pub skipped: Vec<Skipped>,
    pub summary: Summary,
}

impl Report {
    pub fn new(statement: StatementId, records: Vec<CaseRecord>, skipped: Vec<Skipped>) -> Self {
        let mut r = Self {
            schema_version: SCHEMA_VERSION,
            statement: Some(statement),
            records,
            skipped,
            summary: Summary::default(),
        };
        r.summarize();
        r
    }

    pub fn empty() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            statement: None,
            records: Vec::new(),
            skipped: Vec::new(),
            summary: Summary::default(),
        }
    }

    fn summarize(&mut self) {
        let count = |o: Outcome| self.records.iter().filter(|r| r.outcome == o).count();
        self.summary = Summary {
            checked: self.records.len(),
            held: count(Outcome::Held),
            failed: count(Outcome::Failed),
            inapplicable: count(Outcome::Inapplicable),
            skipped: self.skipped.len(),
        };
    }

    pub fn success(&self) -> bool {
        self.summary.failed == 0
    }

    fn to_value(&self, with_timing: bool) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if !with_timing {
            if let Some(records) = v.get_mut("records").and_then(Value::as_array_mut) {
                for r in records {
                    if let Some(obj) = r.as_object_mut() {
                        obj.remove("wall_time_ms");
                    }
                }
            }
        }
        v
    }

    /// JSON with sorted keys and without timings: identical sweeps give
    /// identical bytes.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value(false)).expect("report serializes")
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value(true)).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Usage(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    statement: String,
    n: Option<i64>,
    d: Option<i64>,
    r: Option<i64>,
    s: Option<i64>,
    p: Option<u64>,
    e: Option<u32>,
    outcome: Outcome,
    residue: &'a str,
    multiplicities: String,
    detail: &'a str,
    wall_time_ms: f64,
}

fn multiplicity_string(r: &CaseRecord) -> String {
    r.multiplicities
        .iter()
        .map(|m| match m.observed {
            Some(o) => format!("{}:{}/{}", m.label, o, m.required),
            None => format!("{}:inf/{}", m.label, m.required),
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = report.json();
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &report.records {
                let p = &r.parameters;
                w.serialize(CsvRow {
                    statement: r.statement.to_string(),
                    n: p.n,
                    d: p.d,
                    r: p.r,
                    s: p.s,
                    p: p.p,
                    e: p.e,
                    outcome: r.outcome,
                    residue: &r.residue,
                    multiplicities: multiplicity_string(r),
                    detail: r.detail.as_deref().unwrap_or(""),
                    wall_time_ms: r.wall_time_ms,
                })
                .expect("in-memory csv write");
            }
            if report.records.is_empty() {
                w.write_record([
                    "statement", "n", "d", "r", "s", "p", "e", "outcome", "residue", "multiplicities", "detail",
                    "wall_time_ms",
                ])
                .expect("in-memory csv write");
            }
            w.into_inner().expect("in-memory csv flush")
        }
        Format::Text => text(report).into_bytes(),
    }
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(id) = report.statement {
        let _ = writeln!(out, "statement {id}");
    }
    let _ = writeln!(out, "{:<28} {:<13} {:>10}  multiplicities", "parameters", "outcome", "ms");
    for r in &report.records {
        let outcome = match r.outcome {
            Outcome::Held => "held",
            Outcome::Failed => "FAILED",
            Outcome::Inapplicable => "inapplicable",
        };
        let _ = writeln!(
            out,
            "{:<28} {:<13} {:>10.1}  {}",
            r.parameters.to_string(),
            outcome,
            r.wall_time_ms,
            multiplicity_string(r)
        );
        if !r.residue.is_empty() {
            let _ = writeln!(out, "    residue: {}", r.residue);
        }
        if let Some(d) = &r.detail {
            let _ = writeln!(out, "    {d}");
        }
    }
    for s in &report.skipped {
        let _ = writeln!(out, "skipped {:<20} {}", s.parameters.to_string(), s.reason);
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "checked {}  held {}  failed {}  inapplicable {}  skipped {}",
        s.checked, s.held, s.failed, s.inapplicable, s.skipped
    );
    out
}
