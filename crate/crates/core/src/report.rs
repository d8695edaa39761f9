use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed check, tagged with the invariant it belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub tag: String,
    pub message: String,
}

/// Outcome of a validation pass. Violations make the input invalid;
/// warnings and notes are informational.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<Finding>,
    pub warnings: Vec<Finding>,
    pub notes: Vec<String>,
    /// Largest numerical residual seen by the checks, when they are numerical.
    pub max_residual: Option<f64>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            ..Self::default()
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&mut self, tag: &str, message: impl Into<String>) {
        self.violations.push(Finding {
            tag: tag.to_string(),
            message: message.into(),
        });
    }

    pub fn warning(&mut self, tag: &str, message: impl Into<String>) {
        self.warnings.push(Finding {
            tag: tag.to_string(),
            message: message.into(),
        });
    }

    pub fn note(&mut self, message: impl Into<String>) {
        self.notes.push(message.into());
    }

    pub fn residual(&mut self, r: f64) {
        self.max_residual = Some(self.max_residual.map_or(r, |m| m.max(r)));
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.violations.iter().any(|f| f.tag == tag)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
        self.notes.extend(other.notes);
        if let Some(r) = other.max_residual {
            self.residual(r);
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.is_valid() { "valid" } else { "INVALID" };
        write!(f, "{}: {}", self.subject, status)?;
        if let Some(r) = self.max_residual {
            write!(f, " (max residual {r:.3e})")?;
        }
        for v in &self.violations {
            write!(f, "\n  violation [{}] {}", v.tag, v.message)?;
        }
        for w in &self.warnings {
            write!(f, "\n  warning [{}] {}", w.tag, w.message)?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
