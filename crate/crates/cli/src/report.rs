use std::fmt::Display;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "1";

/// One requested computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub kind: String,
    #[serde(default)]
    pub params: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    /// Exact equality of two displayable values.
    pub fn eq<T: PartialEq + Display>(name: impl Into<String>, lhs: &T, rhs: &T) -> Check {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }

    /// `value < bound`.
    pub fn below(name: impl Into<String>, value: f64, bound: f64) -> Check {
        let status = if value < bound { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, lhs: format!("{value:.3e}"), rhs: format!("< {bound:e}") }
    }

    /// `lhs != rhs`.
    pub fn differ<T: PartialEq + Display>(name: impl Into<String>, lhs: &T, rhs: &T) -> Check {
        let status = if lhs != rhs { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, lhs: lhs.to_string(), rhs: format!("!= {rhs}") }
    }

    /// A step that failed with an error instead of producing a value.
    pub fn error(name: impl Into<String>, err: &CliError) -> Check {
        Check { name: name.into(), status: Status::Fail, lhs: err.to_string(), rhs: "a value".into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub job: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub timing_ms: u64,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Exit status: 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with `timing_ms` zeroed, for determinism comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timing_ms = 0;
        serde_json::to_string_pretty(&r).expect("report serialises")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("unknown job kind `{0}`")]
    UnknownKind(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{}: {}", .0.name(), .0)]
    Domain(#[from] bethe_core::Error),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::UnknownKind(_) => "UnknownKind",
            CliError::UnknownSuite(_) => "UnknownSuite",
            CliError::Schema(_) => "SchemaError",
            CliError::Domain(e) => e.name(),
        }
    }

    /// JSON error document written in place of a report.
    pub fn to_json(&self) -> Value {
        serde_json::json!({ "schema": SCHEMA, "error": { "name": self.name(), "message": self.to_string() } })
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
