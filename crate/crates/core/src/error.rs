use thiserror::Error;

/// Errors raised by the group kernel and the analysis layers built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    /// Malformed user input: bad degree, non-prime modulus, parse failure.
    #[error("input error: {0}")]
    Input(String),
    /// A configured size limit would be exceeded.
    #[error("capacity exceeded: {what} (cap {cap})")]
    Capacity { what: String, cap: u64 },
    /// A precondition of an operation does not hold (e.g. subgroup not normal).
    #[error("contract violation: {0}")]
    Contract(String),
    /// Two independent computations of the same quantity disagree.
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

impl GroupError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        GroupError::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        GroupError::Contract(msg.into())
    }

    pub(crate) fn capacity(what: impl Into<String>, cap: u64) -> Self {
        GroupError::Capacity {
            what: what.into(),
            cap,
        }
    }
}
