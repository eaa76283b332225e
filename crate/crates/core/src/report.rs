//! Report types shared by the verification entry points and the CLI.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "FAIL"),
            CheckStatus::Skip => write!(f, "skip"),
        }
    }
}

/// One named check with outcome and free-form details.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub details: String,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: CheckStatus::Pass,
            details: String::new(),
        }
    }

    pub fn fail(name: impl Into<String>, details: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: CheckStatus::Fail,
            details: details.into(),
        }
    }

    pub fn skip(name: impl Into<String>, details: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: CheckStatus::Skip,
            details: details.into(),
        }
    }

    pub fn of(name: impl Into<String>, ok: bool, details_on_fail: impl Into<String>) -> Self {
        if ok {
            CheckRecord::pass(name)
        } else {
            CheckRecord::fail(name, details_on_fail)
        }
    }
}

/// A titled list of checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(records);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failed(&self) -> Vec<&CheckRecord> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            if c.details.is_empty() {
                writeln!(f, "  [{}] {}", c.status, c.name)?;
            } else {
                writeln!(f, "  [{}] {} — {}", c.status, c.name, c.details)?;
            }
        }
        Ok(())
    }
}
