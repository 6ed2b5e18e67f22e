//! Violation reports shared by every checker in the crate.

use std::fmt;

/// Maximum number of violations stored verbatim; later ones are only counted.
const STORED_LIMIT: usize = 256;

/// A single failed rule together with the cells or simplices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

/// The outcome of a structural check. Empty means the structure passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
    total: usize,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, rule: impl Into<String>, detail: impl Into<String>) {
        self.total += 1;
        if self.violations.len() < STORED_LIMIT {
            self.violations.push(Violation {
                rule: rule.into(),
                detail: detail.into(),
            });
        }
    }

    /// Records a violation when `ok` is false.
    pub fn require(&mut self, ok: bool, rule: &str, detail: impl FnOnce() -> String) {
        if !ok {
            self.push(rule, detail());
        }
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Number of violations found, including those not stored.
    pub fn len(&self) -> usize {
        self.total
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.total += other.total;
        let room = STORED_LIMIT.saturating_sub(self.violations.len());
        self.violations
            .extend(other.violations.into_iter().take(room));
    }

    /// Prefixes every rule name with `context`, for nested checks.
    pub fn within(mut self, context: &str) -> Self {
        for v in &mut self.violations {
            v.rule = format!("{context}: {}", v.rule);
        }
        self
    }

    pub fn has_rule(&self, needle: &str) -> bool {
        self.violations.iter().any(|v| v.rule.contains(needle))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "no violations");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.rule, v.detail)?;
        }
        if self.total > self.violations.len() {
            writeln!(f, "... and {} more", self.total - self.violations.len())?;
        }
        Ok(())
    }
}
