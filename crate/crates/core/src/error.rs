use thiserror::Error;

use crate::exact::IntPoly;

/// Everything that can go wrong inside the exact core.
///
/// Mathematical failures (a matrix product that is not the identity, a scan
/// cell that disagrees with a predicate) are reported as data, not as errors.
/// The variants here are reserved for violated preconditions and for
/// internal assertions whose failure would falsify a theorem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("inexact polynomial division, remainder {remainder}")]
    InexactDivision { remainder: IntPoly },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("family {0} has no rational reciprocal Hankel matrix")]
    UnsupportedElementKind(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
