use std::fmt::Display;

use thiserror::Error;

/// Failures mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: arguments, policy specs, scenario files, manifests.
    #[error("{0}")]
    Validation(String),
    /// Failure while computing or writing results.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 1,
            Self::Runtime(_) => 2,
        }
    }

    pub fn validation(e: impl Display) -> Self {
        Self::Validation(e.to_string())
    }

    pub fn runtime(e: impl Display) -> Self {
        Self::Runtime(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
