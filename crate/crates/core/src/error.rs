use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// Each variant maps onto a stable process exit code, see [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("unsupported singularity: {0}")]
    Unsupported(String),
    #[error("irrational data required: {0}")]
    Irrational(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Input(_) | Error::Inconsistent(_) => 2,
            Error::Precision(_) => 3,
            Error::Unsupported(_) | Error::Irrational(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
