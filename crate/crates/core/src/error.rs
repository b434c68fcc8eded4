use alloc::string::String;
use core::fmt;

/// Errors reported by the analysis operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input violates a documented precondition (bad matrix, bad
    /// fundamental domain, malformed substitution, ...).
    InvalidInput(String),
    /// A configured budget (cell cap, level cap, search cap) was exhausted
    /// before the operation could finish.
    Resource { what: String, cap: u64 },
    /// An internal consistency check failed. This indicates a bug.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Resource { what, cap } => {
                write!(f, "budget exhausted: {what} exceeds cap {cap}")
            }
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn resource(what: impl Into<String>, cap: u64) -> Self {
        Error::Resource { what: what.into(), cap }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = core::result::Result<T, Error>;
