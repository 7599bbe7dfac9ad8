use thiserror::Error;

/// Broad failure category, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
    Resource,
    Structural,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("element index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("incoherent seed: {0}")]
    IncoherentSeed(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("{what}: search space of {size} exceeds cap {cap}")]
    Resource { what: String, size: u128, cap: u128 },

    #[error("{0}")]
    Structural(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } | Error::MalformedWord(_) | Error::Io { .. } => ErrorKind::Parse,
            Error::IndexOutOfRange { .. }
            | Error::NotAGroup(_)
            | Error::IncoherentSeed(_)
            | Error::Validation(_) => ErrorKind::Validation,
            Error::Resource { .. } => ErrorKind::Resource,
            Error::Structural(_) => ErrorKind::Structural,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
