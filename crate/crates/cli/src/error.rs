use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::float_oracle::DigitsTooLow;
use crate::format::ConfigParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ConfigParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Digits(#[from] DigitsTooLow),
    #[error(transparent)]
    Engine(#[from] threegap_core::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),
    /// A run finished but recorded internal violations.
    #[error("{0}")]
    Violations(String),
}

impl CliError {
    /// 1 for bad input, 2 for an internal invariant or bound violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if is_internal(e) => 2,
            CliError::OracleMismatch(_) | CliError::Violations(_) => 2,
            _ => 1,
        }
    }
}

/// Whether an engine error indicates a bug rather than bad input.
pub fn is_internal(e: &threegap_core::Error) -> bool {
    use threegap_core::Error::*;
    matches!(
        e,
        TheoremViolation { .. } | InvariantViolation(_) | ClassificationInconsistency { .. }
    )
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
