use std::fmt;

use serde::Serialize;

/// One named pass/fail check inside a [`Report`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// 1-based position of the first counterexample, when there is one.
    pub counterexample: Option<usize>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, at: Option<usize>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            detail: detail.into(),
            counterexample: at,
        }
    }
}

/// Structured verification outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub note: Option<String>,
}

impl Report {
    pub fn new(title: impl Into<String>, checks: Vec<Check>) -> Self {
        Report {
            title: title.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.title,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            write!(
                f,
                "  [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            )?;
            if let Some(at) = c.counterexample {
                write!(f, " (first difference at {at})")?;
            }
            writeln!(f)?;
        }
        if let Some(note) = &self.note {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}
