//! Parsing and serialization: `.hwd` diagram files, operator-word
//! expressions, matching syntax, DOT and JSON emission.

mod dot;
mod hwd;
mod json;
mod word;

pub use dot::render_dot;
pub use hwd::{parse_diagram, parse_matching, render_hwd};
pub use json::{
    diagram_sum_from_json, diagram_sum_to_json, hw_polynomial_from_json, hw_polynomial_to_json,
    pbw_polynomial_from_json, pbw_polynomial_to_json, tensor_sum_from_json, tensor_sum_to_json,
};
pub use word::parse_word;

use std::fmt;

/// How bad a parser finding is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// A positioned parser finding. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {}: {}", self.line, self.column, severity, self.message)
    }
}

/// A failed parse, carrying its position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{diagnostic}")]
pub struct ParseError {
    pub diagnostic: ParseDiagnostic,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            diagnostic: ParseDiagnostic {
                line,
                column,
                message: message.into(),
                severity: Severity::Error,
            },
        }
    }
}
