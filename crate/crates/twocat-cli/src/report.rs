//! Machine-readable reports.

use serde::{Deserialize, Serialize};
use twocat::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not run because an input it depends on failed its own check.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub truncation: usize,
}

impl Report {
    pub fn new(suite: &str, truncation: usize) -> Self {
        Self {
            suite: suite.to_string(),
            checks: Vec::new(),
            truncation,
        }
    }

    pub fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Status::Pass, detail);
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Status::Fail, detail);
    }

    pub fn skip(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Status::Skip, detail);
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    /// Records the outcome of a structural check, summarising its violations.
    pub fn validation(
        &mut self,
        name: impl Into<String>,
        r: &ValidationReport,
        ok_detail: impl Into<String>,
    ) -> bool {
        if r.is_empty() {
            self.pass(name, ok_detail);
            true
        } else {
            self.fail(name, describe(r));
            false
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One line per check, followed by the failure summary when there is one.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        let failed: Vec<_> = self.failures().collect();
        match failed.first() {
            None => out.push_str(&format!(
                "{}: {} checks passed (N = {})\n",
                self.suite,
                self.checks.len(),
                self.truncation
            )),
            Some(first) => {
                out.push_str(&format!(
                    "first failure: {}: {}\n",
                    first.name, first.detail
                ));
                out.push_str(&format!(
                    "{}: {} of {} checks failed\n",
                    self.suite,
                    failed.len(),
                    self.checks.len()
                ));
            }
        }
        out
    }
}

/// Listed violations of a report, at most [`LISTED`] of them.
pub fn describe(r: &ValidationReport) -> String {
    if r.is_empty() {
        return "ok".to_string();
    }
    let listed: Vec<String> = r
        .violations()
        .iter()
        .take(LISTED)
        .map(|v| format!("{}: {}", v.rule, v.detail))
        .collect();
    let mut s = listed.join("; ");
    if r.len() > LISTED {
        s.push_str(&format!(" (and {} more)", r.len() - LISTED));
    }
    s
}

pub const LISTED: usize = 8;
