//! Machine-readable verification reports.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

pub const REPORT_SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    /// Short statement of the property being checked.
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub wall_time_ms: f64,
}

impl CheckRecord {
    pub fn skipped(check: impl Into<String>, anchor: impl Into<String>, reason: &str) -> Self {
        CheckRecord {
            check: check.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            witness: Some(serde_json::json!({ "reason": reason })),
            wall_time_ms: 0.0,
        }
    }
}

/// Runs `f` and records its verdict; an engine error becomes a failure carrying the message.
pub fn timed<F>(check: impl Into<String>, anchor: impl Into<String>, f: F) -> CheckRecord
where
    F: FnOnce() -> Result<(bool, Option<Value>)>,
{
    let start = Instant::now();
    let (status, witness) = match f() {
        Ok((true, w)) => (Status::Pass, w),
        Ok((false, w)) => (Status::Fail, w),
        Err(e) => (Status::Fail, Some(serde_json::json!({ "error": e.to_string() }))),
    };
    CheckRecord { check: check.into(), anchor: anchor.into(), status, witness, wall_time_ms: start.elapsed().as_secs_f64() * 1e3 }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub subject: String,
    pub suite: String,
    pub config: Value,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    /// Orders the checks by id. Panics if an id occurs twice.
    pub fn new(subject: impl Into<String>, suite: impl Into<String>, config: Value, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.check.cmp(&b.check));
        let mut seen = BTreeSet::new();
        for c in &checks {
            assert!(seen.insert(c.check.as_str()), "check {} recorded twice", c.check);
        }
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary { passed: count(Status::Pass), failed: count(Status::Fail), skipped: count(Status::Skipped) };
        Report { schema_version: REPORT_SCHEMA_VERSION.into(), subject: subject.into(), suite: suite.into(), config, summary, checks }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn get(&self, check: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check == check)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report with every timing field zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.wall_time_ms = 0.0;
        }
        r
    }
}
