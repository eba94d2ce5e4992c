//! Verification results and the JSON report schema.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Worst of two statuses: fail beats inconclusive beats pass.
    pub fn and(self, o: Status) -> Status {
        use Status::*;
        match (self, o) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }
}

/// One line of a report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub check: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub anchor: String,
    pub notes: String,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, check: impl Into<String>, anchor: impl Into<String>) -> CheckResult {
        CheckResult {
            id: id.into(),
            check: check.into(),
            status: Status::Pass,
            residual: None,
            tolerance: None,
            anchor: anchor.into(),
            notes: String::new(),
        }
    }

    /// Pass iff residual ≤ tolerance.
    pub fn measured(mut self, residual: f64, tolerance: f64) -> CheckResult {
        self.residual = Some(residual);
        self.tolerance = Some(tolerance);
        self.status = Status::from_bool(residual.is_finite() && residual <= tolerance);
        self
    }

    pub fn status(mut self, s: Status) -> CheckResult {
        self.status = s;
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> CheckResult {
        let n = n.into();
        if self.notes.is_empty() {
            self.notes = n;
        } else {
            self.notes = format!("{}; {}", self.notes, n);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub results: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Value) -> Report {
        Report { command: command.into(), config, results: Vec::new(), timestamp: None }
    }

    /// Canonical order: by id, then check name.
    pub fn sort(&mut self) {
        self.results.sort_by(|a, b| (&a.id, &a.check).cmp(&(&b.id, &b.check)));
    }

    pub fn status(&self) -> Status {
        self.results.iter().fold(Status::Pass, |s, r| s.and(r.status))
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let c = |s| self.results.iter().filter(|r| r.status == s).count();
        (c(Status::Pass), c(Status::Fail), c(Status::Inconclusive))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_lattice() {
        assert_eq!(Status::Pass.and(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Inconclusive.and(Status::Fail), Status::Fail);
        assert_eq!(Status::Fail.exit_code(), 1);
    }

    #[test]
    fn measured_rejects_nan() {
        let r = CheckResult::new("x", "y", "z").measured(f64::NAN, 1.0);
        assert_eq!(r.status, Status::Fail);
    }
}
