//! Outcome records shared by the checkers.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One named check: how many equalities were evaluated and which failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    pub count: u64,
    pub violations: u64,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    witness_cap: Option<usize>,
}

impl CheckResult {
    /// A check that keeps every failing witness.
    pub fn new(check: impl Into<String>) -> Self {
        CheckResult {
            check: check.into(),
            status: Status::Pass,
            count: 0,
            violations: 0,
            witnesses: Vec::new(),
            note: None,
            witness_cap: None,
        }
    }

    /// A check that keeps at most `cap` failing witnesses (all failures are counted).
    pub fn capped(check: impl Into<String>, cap: usize) -> Self {
        CheckResult {
            witness_cap: Some(cap),
            ..CheckResult::new(check)
        }
    }

    pub fn skipped(check: impl Into<String>, why: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Skip,
            note: Some(why.into()),
            ..CheckResult::new(check)
        }
    }

    /// Records one evaluated equality; `witness` is only rendered on failure.
    pub fn record(&mut self, holds: bool, witness: impl FnOnce() -> String) {
        self.count += 1;
        if !holds {
            self.fail(witness());
        }
    }

    /// Records a failure that was not an equality evaluation (e.g. an error).
    pub fn fail(&mut self, witness: String) {
        self.violations += 1;
        self.status = Status::Fail;
        if self
            .witness_cap
            .is_none_or(|cap| self.witnesses.len() < cap)
        {
            self.witnesses.push(witness);
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Folds another result for the same check into this one.
    pub fn absorb(&mut self, other: CheckResult) {
        self.count += other.count;
        self.violations += other.violations;
        if other.status == Status::Fail {
            self.status = Status::Fail;
        }
        for w in other.witnesses {
            if self
                .witness_cap
                .is_none_or(|cap| self.witnesses.len() < cap)
            {
                self.witnesses.push(w);
            }
        }
    }
}
