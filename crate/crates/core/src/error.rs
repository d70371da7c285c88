//! Crate-level error type for constraint screens and catalog lookups.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    /// A theorem-level precondition on the parameters failed (for example a
    /// lower hypergeometric parameter forced to a non-positive integer, or a
    /// parameter choice that makes a denominator vanish).
    #[error("constraint violation: {0}")]
    Constraint(String),

    /// Unknown identity or catalog id.
    #[error("unknown id: {0}")]
    UnknownId(String),

    /// Malformed user input (bad rational literal, missing parameter, ...).
    #[error("usage error: {0}")]
    Usage(String),
}
