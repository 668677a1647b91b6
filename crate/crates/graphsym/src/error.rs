use std::time::Duration;

use crate::perm::Permutation;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The operation is only defined on connected graphs.
    #[error("graph is disconnected")]
    Disconnected,

    /// A caller-supplied argument violates a precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A construction or search would exceed the configured vertex budget.
    #[error("vertex budget exceeded: needs {required} vertices, budget is {budget}")]
    BudgetExceeded { required: usize, budget: usize },

    /// Automorphism search hit its deadline. `partial_generators` holds whatever
    /// was found before the deadline; it is NOT a generating set and must not be
    /// used to draw conclusions about the group.
    #[error("automorphism search timed out after {elapsed:?}")]
    Timeout {
        elapsed: Duration,
        partial_generators: Vec<Permutation>,
    },

    /// Malformed edge-list file or corpus manifest.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
