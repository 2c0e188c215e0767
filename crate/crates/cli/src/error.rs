use std::fmt;
use std::process::ExitCode;

/// A run that did not succeed, with its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags, config, parameters or output path (exit 2).
    Invalid(String),
    /// A checked claim did not hold (exit 1).
    Falsified(String),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn from_model(e: aversion_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Falsified(_) => ExitCode::from(1),
            CliError::Invalid(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "error: {m}"),
            CliError::Falsified(m) => write!(f, "falsified: {m}"),
        }
    }
}
