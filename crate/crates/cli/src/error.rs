use std::path::PathBuf;

use thiserror::Error;

/// Failures mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("row {row}: {message}")]
    Data { row: u64, message: String },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Data { .. } => 3,
        }
    }
}

impl From<npcorr::Error> for CliError {
    fn from(e: npcorr::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
