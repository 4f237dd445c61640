use thiserror::Error;

/// Errors raised by the computational modules.
///
/// Every variant names the module that rejected the input so that callers
/// (in particular the command line front end) can report it verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weights: {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weights: {0:?} has negative entries, expected a Young diagram")]
    NegativeEntries(Vec<i64>),
    #[error("{module}: length mismatch (expected {expected}, got {got})")]
    LengthMismatch {
        module: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{module}: precondition violated: {message}")]
    Precondition {
        module: &'static str,
        message: String,
    },
    #[error("{module}: integrity check failed: {message}")]
    Integrity {
        module: &'static str,
        message: String,
    },
}

impl Error {
    pub fn precondition(module: &'static str, message: impl Into<String>) -> Self {
        Error::Precondition {
            module,
            message: message.into(),
        }
    }

    pub fn integrity(module: &'static str, message: impl Into<String>) -> Self {
        Error::Integrity {
            module,
            message: message.into(),
        }
    }

    /// True for failures of a consistency check between two independent routes.
    pub fn is_integrity(&self) -> bool {
        matches!(self, Error::Integrity { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
