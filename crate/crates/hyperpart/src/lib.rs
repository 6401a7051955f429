//! Configuration, reports and subcommands behind the `hyperpart` binary.

pub mod commands;
pub mod config;
pub mod output;
pub mod report;
pub mod svg;

use std::path::PathBuf;

use hyperpart_core::Error as CoreError;

/// Process exit statuses.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const IO: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const VERIFICATION_FAILED: i32 = 3;
    pub const NUMERICAL: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed config: {0}")]
    Parse(serde_json::Error),

    #[error("invalid config: {0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Parse(_) | CliError::Validation(_) => exit::VALIDATION,
            CliError::Core(e) => match e {
                CoreError::IllConditioned { .. }
                | CoreError::LadderStalled { .. }
                | CoreError::Exhausted(_) => exit::NUMERICAL,
                _ => exit::VALIDATION,
            },
        }
    }
}
