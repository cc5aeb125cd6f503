//! Source locations and user-facing diagnostics.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Location {
    pub file: Arc<str>,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}

/// An error or violation, anchored at a source location or a structure name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub location: Option<Location>,
    pub subject: Option<String>,
    pub message: String,
}

impl Diagnostic {
    pub fn at(location: Location, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            location: Some(location),
            subject: None,
            message: message.into(),
        }
    }

    pub fn about(subject: impl Into<String>, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            location: None,
            subject: Some(subject.into()),
            message: message.into(),
        }
    }

    pub fn with_subject(mut self, subject: impl Into<String>) -> Diagnostic {
        self.subject = Some(subject.into());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.location, &self.subject) {
            (Some(l), Some(s)) => write!(f, "{l}: {s}: {}", self.message),
            (Some(l), None) => write!(f, "{l}: {}", self.message),
            (None, Some(s)) => write!(f, "{s}: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}
