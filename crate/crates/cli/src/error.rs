use std::path::PathBuf;

use thiserror::Error;

/// Exit status for a configuration or usage error.
pub const EXIT_USAGE: u8 = 2;
/// Exit status when a mathematical check fails.
pub const EXIT_CHECK: u8 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config field `{field}`: {reason}")]
    Field { field: String, reason: String },

    #[error("invalid config: {0}")]
    Parse(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("writing output: {0}")]
    Write(#[from] std::io::Error),

    #[error("{0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Core(#[from] dezin::Error),
}

impl CliError {
    pub fn field(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Field { field: field.into(), reason: reason.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(dezin::Error::NotHermitian { .. }) => EXIT_CHECK,
            _ => EXIT_USAGE,
        }
    }
}
