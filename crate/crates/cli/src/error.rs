use std::fmt::Display;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or invalid input file.
    #[error("{origin}: {message}")]
    Input { origin: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] fairdiv_core::Error),
}

impl CliError {
    pub fn input(origin: impl Display, message: impl Into<String>) -> Self {
        CliError::Input { origin: origin.to_string(), message: message.into() }
    }

    /// The message without the file prefix.
    pub fn message(&self) -> String {
        match self {
            CliError::Input { message, .. } => message.clone(),
            other => other.to_string(),
        }
    }

    /// 2 for anything the user can fix, 3 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(fairdiv_core::Error::Internal(_)) => 3,
            _ => 2,
        }
    }
}
