//! Runtime configuration: size limits and output format.
//!
//! Values are resolved in order of increasing priority: built-in defaults,
//! then a `key=value` config file, then `HWHOPF_*` environment variables,
//! then command-line flags.

use std::path::Path;

use hwhopf_core::limits::Limits;

use crate::textio::{ParseDiagnostic, ParseError, Severity};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Dot,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "text" => Some(OutputFormat::Text),
            "json" => Some(OutputFormat::Json),
            "dot" => Some(OutputFormat::Dot),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_edges: usize,
    pub max_vertices: usize,
    pub antipode_edge_limit: usize,
    pub output: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        let limits = Limits::default();
        Config {
            max_edges: limits.max_edges,
            max_vertices: limits.max_vertices,
            antipode_edge_limit: limits.antipode_edge_limit,
            output: OutputFormat::Text,
        }
    }
}

impl Config {
    pub fn limits(&self) -> Limits {
        Limits {
            max_vertices: self.max_vertices,
            max_edges: self.max_edges,
            antipode_edge_limit: self.antipode_edge_limit,
            ..Limits::default()
        }
    }

    /// Applies one `key=value` assignment. Unknown keys produce a warning
    /// diagnostic rather than an error so config files stay forward
    /// compatible; bad values are errors.
    fn apply(
        &mut self,
        key: &str,
        value: &str,
        line: usize,
        warnings: &mut Vec<ParseDiagnostic>,
    ) -> Result<(), ParseError> {
        let positive = |value: &str| -> Result<usize, ParseError> {
            match value.parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(ParseError::new(line, 1, format!("`{key}` needs a positive integer"))),
            }
        };
        match key {
            "max_edges" => self.max_edges = positive(value)?,
            "max_vertices" => self.max_vertices = positive(value)?,
            "antipode_edge_limit" => self.antipode_edge_limit = positive(value)?,
            "output" => {
                self.output = OutputFormat::parse(value).ok_or_else(|| {
                    ParseError::new(line, 1, "`output` must be text, json or dot")
                })?;
            }
            other => warnings.push(ParseDiagnostic {
                line,
                column: 1,
                message: format!("unknown config key `{other}`"),
                severity: Severity::Warning,
            }),
        }
        Ok(())
    }

    /// Parses a config file body. Returns the updated config and any
    /// warnings.
    pub fn apply_file_text(&mut self, text: &str) -> Result<Vec<ParseDiagnostic>, ParseError> {
        let mut warnings = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let Some((key, value)) = stripped.split_once('=') else {
                return Err(ParseError::new(line, 1, "expected key=value"));
            };
            self.apply(key.trim(), value.trim(), line, &mut warnings)?;
        }
        Ok(warnings)
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<Vec<ParseDiagnostic>, ParseError> {
        let text = std::fs::read_to_string(path)
            .map_err(|err| ParseError::new(1, 1, format!("cannot read {}: {err}", path.display())))?;
        self.apply_file_text(&text)
    }

    /// Applies `HWHOPF_*` environment variables.
    pub fn apply_env(&mut self) -> Result<Vec<ParseDiagnostic>, ParseError> {
        let mut warnings = Vec::new();
        for key in ["max_edges", "max_vertices", "antipode_edge_limit", "output"] {
            let variable = format!("HWHOPF_{}", key.to_uppercase());
            if let Ok(value) = std::env::var(&variable) {
                self.apply(key, &value, 1, &mut warnings)
                    .map_err(|e| ParseError::new(1, 1, format!("{variable}: {}", e.diagnostic.message)))?;
            }
        }
        Ok(warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults_and_warns_on_unknown_keys() {
        let mut config = Config::default();
        let warnings = config
            .apply_file_text("# comment\nmax_edges = 20\nmystery = 3\noutput=json\n")
            .unwrap();
        assert_eq!(config.max_edges, 20);
        assert_eq!(config.output, OutputFormat::Json);
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].severity, Severity::Warning);
        assert_eq!(warnings[0].line, 3);
    }

    #[test]
    fn bad_values_are_rejected() {
        let mut config = Config::default();
        assert!(config.apply_file_text("max_edges = zero").is_err());
        assert!(config.apply_file_text("max_edges = 0").is_err());
        assert!(config.apply_file_text("output = yaml").is_err());
        assert!(config.apply_file_text("stray line").is_err());
    }

    #[test]
    fn limits_reflect_the_config() {
        let config = Config { max_edges: 5, max_vertices: 7, antipode_edge_limit: 3, output: OutputFormat::Text };
        let limits = config.limits();
        assert_eq!(limits.max_edges, 5);
        assert_eq!(limits.max_vertices, 7);
        assert_eq!(limits.antipode_edge_limit, 3);
    }
}
