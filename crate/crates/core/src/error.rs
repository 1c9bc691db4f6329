use alloc::string::String;
use alloc::vec::Vec;

use crate::td::Violation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A search or table exceeded its configured size.
    #[error("resource budget exceeded: {what} needs {needed}, budget is {budget}")]
    Budget {
        what: &'static str,
        needed: u64,
        budget: u64,
    },

    #[error("no winning strategy found with up to {k_max} cops")]
    BoundNotFound { k_max: usize },

    #[error("candidate pool cannot cover vertices {missed:?}")]
    Uncoverable { missed: Vec<usize> },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(Violation),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("illegal move in round {round}: {detail}")]
    IllegalMove { round: usize, detail: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Maps the error onto the command-line exit code convention
    /// (2 invalid input, 3 resource budget, 4 soundness failure).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::InvalidDecomposition(_) | Error::Config(_) => 2,
            Error::Budget { .. } | Error::BoundNotFound { .. } | Error::Uncoverable { .. } => 3,
            Error::IllegalMove { .. } | Error::Internal(_) => 4,
        }
    }
}
