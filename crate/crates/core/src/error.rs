use thiserror::Error;

use crate::format::ParseFailure;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A table, enumeration or family would exceed a configured budget.
    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("arity error: {0}")]
    Arity(String),

    /// Inconsistent shapes handed to a constructor (sizes, arities, indices).
    #[error("malformed structure: {0}")]
    Shape(String),

    /// A derived object failed an invariant the theory says it must satisfy.
    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("quotient not well defined: {0}")]
    WellDefinedness(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal assertion: {0}")]
    InternalAssert(String),

    #[error(transparent)]
    Parse(#[from] ParseFailure),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, requested: u128, limit: u128) -> Self {
        Error::Capacity {
            what,
            requested,
            limit,
        }
    }
}
