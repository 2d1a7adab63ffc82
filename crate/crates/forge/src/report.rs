//! Schema-versioned verification reports.
//!
//! A report passes iff every gating record passes. Records that only
//! document an outcome (for example a decomposition variant that does not
//! close) are written with `gating = false`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "zmc-forge/report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cmp {
    /// `gap ≤ tol`
    Le,
    /// `gap ≥ tol`, for quantities that must be large.
    Ge,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
    pub gap: f64,
    pub tol: f64,
    pub cmp: Cmp,
    pub gating: bool,
    pub domain_ok: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, Value>,
}

impl Record {
    pub fn le(name: impl Into<String>, gap: f64, tol: f64) -> Self {
        Record::new(name.into(), gap, tol, Cmp::Le)
    }

    pub fn ge(name: impl Into<String>, gap: f64, tol: f64) -> Self {
        Record::new(name.into(), gap, tol, Cmp::Ge)
    }

    fn new(name: String, gap: f64, tol: f64, cmp: Cmp) -> Self {
        // NaN never passes
        let pass = match cmp {
            Cmp::Le => gap <= tol,
            Cmp::Ge => gap >= tol,
        };
        Record { name, point: None, gap, tol, cmp, gating: true, domain_ok: true, pass, extra: BTreeMap::new() }
    }

    pub fn at(mut self, point: &[f64]) -> Self {
        self.point = Some(point.to_vec());
        self
    }

    /// Adds a condition that must also hold for the record to pass.
    pub fn and(mut self, cond: bool) -> Self {
        self.pass &= cond;
        self
    }

    pub fn info(mut self) -> Self {
        self.gating = false;
        self
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.extra.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregates {
    /// Over gating `le` records.
    pub max_gap: f64,
    pub mean_gap: f64,
    pub pass_count: usize,
    pub fail_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: &'static str,
    pub suite: String,
    pub seed: u64,
    pub tolerances: BTreeMap<String, Value>,
    pub records: Vec<Record>,
    pub aggregates: Aggregates,
    pub notes: Vec<String>,
    pub pass: bool,
    /// `null` in deterministic mode.
    pub wall_time_ms: Option<u64>,
}

/// Collects records for one suite.
#[derive(Debug)]
pub struct ReportBuilder {
    suite: String,
    seed: u64,
    tolerances: BTreeMap<String, Value>,
    records: Vec<Record>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        ReportBuilder { suite: suite.into(), seed, tolerances: BTreeMap::new(), records: Vec::new(), notes: Vec::new() }
    }

    /// Registers a tolerance under `name` and returns it.
    pub fn tol<T: Serialize + Copy>(&mut self, name: &str, value: T) -> T {
        self.tolerances.insert(name.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        value
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn finish(self, wall_time_ms: Option<u64>) -> VerificationReport {
        let gating: Vec<&Record> = self.records.iter().filter(|r| r.gating && r.domain_ok).collect();
        let gaps: Vec<f64> = gating.iter().filter(|r| r.cmp == Cmp::Le && r.gap.is_finite()).map(|r| r.gap).collect();
        let max_gap = gaps.iter().copied().fold(0.0, f64::max);
        let mean_gap = if gaps.is_empty() { 0.0 } else { gaps.iter().sum::<f64>() / gaps.len() as f64 };
        let pass_count = gating.iter().filter(|r| r.pass).count();
        let fail_count = gating.len() - pass_count;
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            suite: self.suite,
            seed: self.seed,
            tolerances: self.tolerances,
            aggregates: Aggregates { max_gap, mean_gap, pass_count, fail_count },
            pass: fail_count == 0 && !gating.is_empty(),
            records: self.records,
            notes: self.notes,
            wall_time_ms,
        }
    }
}

impl VerificationReport {
    /// `PASS suite (n/m records, max gap g)` or the FAIL analogue.
    pub fn summary_line(&self) -> String {
        let a = &self.aggregates;
        format!(
            "{} {} ({}/{} records, max gap {:.3e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite,
            a.pass_count,
            a.pass_count + a.fail_count,
            a.max_gap
        )
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.gating && r.domain_ok && !r.pass)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
