//! Structured verification reports.
//!
//! A report is a tree of sections; each certificate carries the measured
//! value, the bound it was compared against, the comparison direction, and
//! the resulting flag — a bare pass/fail with no numbers is not
//! representable.  Serialization is deterministic (struct field order,
//! shortest round-trip floats), so identical runs produce identical bytes.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Theorem,
    Convergence,
    Blowup,
    Embedding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// pass iff `measured > bound`
    Greater,
    /// pass iff `measured < bound`
    Less,
    /// pass iff `|measured| <= bound`
    AbsLe,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl Certificate {
    pub fn greater(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Certificate { name: name.into(), measured, bound, comparison: Comparison::Greater, pass: measured > bound }
    }

    pub fn less(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Certificate { name: name.into(), measured, bound, comparison: Comparison::Less, pass: measured < bound }
    }

    pub fn abs_le(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Certificate { name: name.into(), measured, bound, comparison: Comparison::AbsLe, pass: measured.abs() <= bound }
    }
}

/// A labelled table of numeric rows.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportSection {
    pub name: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    pub certificates: Vec<Certificate>,
}

impl ReportSection {
    pub fn new(name: impl Into<String>) -> Self {
        ReportSection { name: name.into(), tables: Vec::new(), certificates: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub kind: ReportKind,
    pub tool_version: String,
    pub parameters: Map<String, Value>,
    pub sections: Vec<ReportSection>,
}

impl ReportDocument {
    pub fn new(kind: ReportKind) -> Self {
        ReportDocument {
            kind,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: Map::new(),
            sections: Vec::new(),
        }
    }

    pub fn set_parameter(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn all_pass(&self) -> bool {
        self.sections.iter().all(|s| s.all_pass())
    }

    /// Deterministic pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}
