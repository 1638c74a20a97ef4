//! Library side of the `certipoly` command: system-file format, JSON
//! output shapes and the subcommand implementations.

use std::fmt;

pub mod commands;
pub mod json;
pub mod system;

pub use system::SystemFile;

/// Failure of one command, mapped to the process exit code.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Unsupported(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Unsupported(m) => write!(f, "unsupported input: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<certipoly::Error> for CliError {
    fn from(e: certipoly::Error) -> Self {
        use certipoly::Error as E;
        match e {
            E::Parse { .. } => CliError::Parse(e.to_string()),
            E::InvalidInput(_) | E::NotZeroDimensional | E::Unsupported(_) | E::DivisionByZero => {
                CliError::Unsupported(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}
