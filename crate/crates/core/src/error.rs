use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A desk-scale size guard was exceeded.
    #[error("size guard: {what} is {actual}, limit {limit}")]
    Guard {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("matrix is not simple-uniform: {0}")]
    NotSimpleUniform(String),

    #[error("contraction set {0} is not independent")]
    NotIndependent(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn guard(what: &'static str, actual: impl Into<u128>, limit: impl Into<u128>) -> Error {
        Error::Guard {
            what,
            actual: actual.into(),
            limit: limit.into(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
