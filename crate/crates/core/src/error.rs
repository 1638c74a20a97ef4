use thiserror::Error;

/// Errors raised by the solving kernel and the pipelines built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("division by zero")]
    DivisionByZero,

    /// The divisor interval contains zero; callers split or raise precision.
    #[error("possible singularity: divisor interval contains zero")]
    PossibleSingularity,

    #[error("system is not zero-dimensional")]
    NotZeroDimensional,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Linear form rejected during RUR construction.
    #[error("linear form is not separating")]
    NotSeparating,

    #[error("internal failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
