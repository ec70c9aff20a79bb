//! Violation witnesses and validation reports.
//!
//! Every law check produces witnesses instead of booleans: a failed check
//! names the concrete elements that break it, so reports are actionable and
//! mutation tests can assert that the injected defect is the one found.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A single concrete counterexample to a law or invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The check or invariant that failed, e.g. `"CA"` or `"reserved-timing"`.
    pub check: String,
    /// The elements involved, in check-specific order.
    pub subjects: Vec<String>,
    /// Human-readable detail.
    pub detail: String,
}

impl Witness {
    pub fn new(
        check: impl Into<String>,
        subjects: impl IntoIterator<Item = String>,
        detail: impl Into<String>,
    ) -> Self {
        Witness {
            check: check.into(),
            subjects: subjects.into_iter().collect(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.check, self.subjects.join(", "), self.detail)
    }
}

/// One broken invariant found by validation, with a path to the offender.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Dotted path to the offending element, e.g. `"actors.A.react[1]"`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// The outcome of validating an environment against its type invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            path: path.into(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}
