use thiserror::Error;

use crate::verify::VerifyReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error (line {line}): {msg}")]
    Parse { line: usize, msg: String },

    /// A parameter is outside the range in which the construction is valid.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Inputs are internally inconsistent (mismatched vertex sets, bad decompositions).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("randomized construction `{what}` failed after {attempts} attempts")]
    RandomizedFailure { what: String, attempts: u64 },

    #[error("verification failed: {0}")]
    Verification(VerifyReport),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) | Error::Json(_) => 2,
            Error::Parameter(_) | Error::Structural(_) => 3,
            Error::Verification(_) => 4,
            Error::RandomizedFailure { .. } => 5,
        }
    }
}
