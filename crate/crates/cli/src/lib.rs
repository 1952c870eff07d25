//! Command-line front end for the tropopt solvers.
//!
//! Every command reads one JSON file and writes one JSON document to stdout.
//! The exit code carries the error class: 2 for unreadable or malformed
//! input (stdout stays empty), 3 when a solver precondition fails, 4 when
//! verification finds a mismatch. Codes 3 and 4 come with a `diagnostic`
//! object naming the failed condition.

pub mod codec;
pub mod commands;

use serde_json::{json, Value};

pub use commands::{run, Algebra, Command, Outcome};

/// Errors that end a command, grouped by exit code.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("precondition failed: {condition} ({message})")]
    Precondition { condition: String, message: String },
    #[error("verification failed on check {check}: {detail}")]
    Verification { check: String, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition { .. } => 3,
            CliError::Verification { .. } => 4,
        }
    }

    /// The JSON written to stdout, if any.
    pub fn diagnostic(&self) -> Option<Value> {
        match self {
            CliError::Input(_) => None,
            CliError::Precondition { condition, message } => Some(json!({
                "diagnostic": {
                    "kind": "precondition",
                    "condition": condition,
                    "message": message,
                }
            })),
            CliError::Verification { check, detail } => Some(json!({
                "diagnostic": {
                    "kind": "verification-failure",
                    "check": check,
                    "detail": detail,
                }
            })),
        }
    }
}

impl From<tropopt::Error> for CliError {
    fn from(e: tropopt::Error) -> Self {
        if e.is_precondition() {
            CliError::Precondition {
                condition: e.condition(),
                message: e.to_string(),
            }
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<tropopt::oracle::OracleError> for CliError {
    fn from(e: tropopt::oracle::OracleError) -> Self {
        use tropopt::oracle::OracleError as O;
        match e {
            O::VerificationFailure { check, detail } => CliError::Verification {
                check: check.to_string(),
                detail,
            },
            // the solver found an optimum, so an empty grid is a mismatch
            O::EmptyFeasibleGrid => CliError::Verification {
                check: "optimum".into(),
                detail: e.to_string(),
            },
            O::GridTooLarge { .. } | O::InvalidGrid(_) => CliError::Input(e.to_string()),
            O::Algebra(inner) => inner.into(),
        }
    }
}
