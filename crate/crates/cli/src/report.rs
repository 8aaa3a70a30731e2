//! The JSON report written by every subcommand.

use gammaring_core::report::{CheckResult, Status};
use serde::Serialize;
use serde_json::Value;

pub const FORMAT: &str = "gammaring.report/1";

#[derive(Debug, Serialize)]
pub struct Counts {
    pub evaluated: u64,
    pub violations: u64,
}

#[derive(Debug, Serialize)]
pub struct Entry {
    pub check: String,
    pub status: Status,
    pub counts: Counts,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&CheckResult> for Entry {
    fn from(c: &CheckResult) -> Self {
        Entry {
            check: c.check.clone(),
            status: c.status,
            counts: Counts {
                evaluated: c.count,
                violations: c.violations,
            },
            witnesses: c.witnesses.clone(),
            note: c.note.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub config: Value,
    pub results: Vec<Entry>,
    pub summary: Value,
}

impl Report {
    pub fn new(command: &'static str, config: Value) -> Self {
        Report {
            format: FORMAT,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            results: Vec::new(),
            summary: Value::Null,
        }
    }

    pub fn push(&mut self, check: &CheckResult) {
        self.results.push(check.into());
    }

    pub fn push_all<'a>(&mut self, checks: impl IntoIterator<Item = &'a CheckResult>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn violations(&self) -> u64 {
        self.results.iter().map(|e| e.counts.violations).sum()
    }

    /// Fills in the summary: overall status and violation count, plus `details`.
    pub fn finish(&mut self, details: Value) {
        let violations = self.violations();
        self.summary = serde_json::json!({
            "status": if violations == 0 { "pass" } else { "fail" },
            "checks": self.results.len(),
            "violations": violations,
            "details": details,
        });
    }
}
