//! Validation reports.
//!
//! Checks append violations in a fixed enumeration order, so a report's
//! rendering is deterministic for a given input.

use std::fmt;

/// One failed identity, naming the rule and the basis indices witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

/// Outcome of validating one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), violations: Vec::new() }
    }

    pub fn fail(&mut self, rule: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation { rule: rule.into(), witness: witness.into() });
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Moves another report's violations into this one, prefixing the rule names.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for v in other.violations {
            self.violations.push(Violation {
                rule: format!("{prefix}.{}", v.rule),
                witness: v.witness,
            });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            writeln!(f, "{}: ok", self.subject)
        } else {
            writeln!(f, "{}: {} violation(s)", self.subject, self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {} at {}", v.rule, v.witness)?;
            }
            Ok(())
        }
    }
}
