use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub location: String,
    pub message: String,
}

impl Issue {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Issue { location: location.into(), message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {}", .0.iter().map(|i| format!("{}: {}", i.location, i.message)).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Issue>),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] ceresa_core::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Invalid(_) => "invalid-input",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Core(_) => "computation",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let issues = match self {
            CliError::Invalid(issues) => issues.clone(),
            _ => Vec::new(),
        };
        json!({ "error": { "kind": self.kind(), "message": self.to_string(), "issues": issues } })
    }
}
