//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A parameter is outside the documented domain of an operation.
    #[error("parameter error: {0}")]
    Param(String),

    /// The operation is well defined mathematically but not supported here.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Two values belong to different surface models.
    #[error("surface model mismatch: {0}")]
    ModelMismatch(String),

    /// A Fock-space state mixes monomials of different weights.
    #[error("mixed-weight Fock state: {0}")]
    MixedWeight(String),

    /// A polynomial was expected to be univariate (or constant) and is not.
    #[error("not univariate: {0}")]
    NotUnivariate(String),

    /// Text that failed to parse as a polynomial.
    #[error("parse error: {0}")]
    Parse(String),

    /// Two internal computation routes disagree. Must never happen in a
    /// passing build; surfaced instead of silently picking one side.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
