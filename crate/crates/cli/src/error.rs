use std::path::PathBuf;

use thiserror::Error;

/// Errors reported by the command line front end.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] twistcube_core::Error),
    #[error("malformed {what} {path}: {source}")]
    Parse { what: &'static str, path: PathBuf, source: serde_json::Error },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// Process exit code: 2 when a size guard refused the work, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(twistcube_core::Error::GuardExceeded { .. }) => 2,
            _ => 1,
        }
    }
}
