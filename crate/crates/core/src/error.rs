use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A table or index violated the group axioms or was out of range.
    #[error("structural error: {0}")]
    Structural(String),

    /// Parameters outside the domain of a builder or formula.
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("capacity exceeded: {what} ({got} > limit {limit})")]
    Capacity {
        what: &'static str,
        got: u128,
        limit: u128,
    },

    #[error("parse error at position {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },

    /// Two computation routes that must agree did not. Always a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
