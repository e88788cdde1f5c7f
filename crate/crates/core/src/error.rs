use std::io;

/// Errors produced by parsing, training, and the evaluation protocols.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A line-based format violated its schema. Carries the 1-based line number.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A precondition or data invariant was violated.
    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
