use thiserror::Error;

/// Errors raised by the polynomial, series and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable context mismatch: {0}")]
    Context(String),
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A product of directed expansions whose coefficient is not a finite sum
    /// modulo the requested q-order.
    #[error("divergent product: {0}")]
    Divergent(String),
    /// Broken internal invariant (an inexact division that must be exact, ...).
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
