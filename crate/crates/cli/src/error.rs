use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(#[from] swcnt_core::error::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("output: {0}")]
    Output(#[source] std::io::Error),
    #[error("params file {path}: {source}")]
    Config {
        path: PathBuf,
        #[source]
        source: swcnt_core::error::Error,
    },
    #[error("{0} verification check(s) failed")]
    VerificationFailed(usize),
}

impl CliError {
    /// 0 success, 1 verification failure, 2 input validation, 3 I/O, 4 config parse.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Io { .. } | CliError::Output(_) => 3,
            CliError::Config { .. } => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
