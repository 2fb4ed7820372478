use std::path::PathBuf;
use thiserror::Error;

/// Exit codes of the `petz` binary.
pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNKNOWN_EXAMPLE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: malformed state file: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {reason}")]
    StateFile { path: PathBuf, reason: String },
    #[error("{path}: invalid state: {source}")]
    InvalidState { path: PathBuf, source: petz::Error },
    #[error("invalid grid '{grid}': {reason}")]
    Grid { grid: String, reason: String },
    #[error("malformed curve CSV: {0}")]
    Csv(String),
    #[error("unknown example '{0}'")]
    UnknownExample(String),
    #[error(transparent)]
    Core(#[from] petz::Error),
    #[error("output failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::UnknownExample(_) => EXIT_UNKNOWN_EXAMPLE,
            _ => EXIT_INVALID,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
