//! Verification reports: one record per checked identity, deterministic text and JSON output.

use std::fmt::Write as _;

use serde::Serialize;

/// `Recorded` marks a documented finding (for instance a printed formula that does not hold);
/// it and `Na` do not fail a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Na,
    Recorded,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Na => "n/a",
            Status::Recorded => "recorded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// Number of evaluated grid points.
    pub grid: usize,
    pub status: Status,
    /// Largest deviation seen, for numeric checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn exact(id: impl Into<String>, grid: usize, ok: bool) -> Self {
        CheckRecord { id: id.into(), grid, status: Status::from_bool(ok), max_deviation: None, note: None }
    }

    pub fn numeric(id: impl Into<String>, grid: usize, ok: bool, dev: f64) -> Self {
        CheckRecord { max_deviation: Some(dev), ..Self::exact(id, grid, ok) }
    }

    pub fn recorded(id: impl Into<String>, grid: usize, note: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            grid,
            status: Status::Recorded,
            max_deviation: None,
            note: Some(note.into()),
        }
    }

    /// A check that could not run; the error becomes a failure.
    pub fn errored(id: impl Into<String>, err: &crate::Error) -> Self {
        CheckRecord { note: Some(err.to_string()), ..Self::exact(id, 0, false) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: serde_json::Value,
    pub records: Vec<CheckRecord>,
    pub status: Status,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, params: serde_json::Value) -> Self {
        VerificationReport { suite: suite.into(), params, records: Vec::new(), status: Status::Pass }
    }

    pub fn push(&mut self, rec: CheckRecord) {
        self.records.push(rec);
        self.refresh();
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
        self.refresh();
    }

    pub fn extend_records(&mut self, recs: impl IntoIterator<Item = CheckRecord>) {
        self.records.extend(recs);
        self.refresh();
    }

    fn refresh(&mut self) {
        self.status = Status::from_bool(self.records.iter().all(CheckRecord::passed));
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        let width = self.records.iter().map(|r| r.id.len()).max().unwrap_or(0);
        for r in &self.records {
            let _ = write!(out, "  [{:>8}] {:<width$}  grid={}", r.status.label(), r.id, r.grid);
            if let Some(d) = r.max_deviation {
                let _ = write!(out, "  max_dev={d:.3e}");
            }
            if let Some(n) = &r.note {
                let _ = write!(out, "  ({n})");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "overall: {}", self.status.label());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_aggregation() {
        let mut r = VerificationReport::new("t", serde_json::Value::Null);
        r.push(CheckRecord::exact("a", 3, true));
        r.push(CheckRecord::recorded("b", 1, "finding"));
        assert!(r.passed());
        r.push(CheckRecord::numeric("c", 2, false, 0.5));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn deterministic_output() {
        let mut r = VerificationReport::new("t", serde_json::json!({"N": 3}));
        r.push(CheckRecord::numeric("c", 2, true, 1e-9));
        assert_eq!(r.to_json(), r.clone().to_json());
        assert!(r.to_text().contains("max_dev=1.000e-9"));
    }
}
