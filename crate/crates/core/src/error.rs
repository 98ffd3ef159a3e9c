use thiserror::Error;

/// Failures raised by library operations.
///
/// Axiom violations are not errors: they are reported through
/// [`Report`](crate::Report). Errors describe inputs an operation cannot act on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-domain input (dimension mismatch, duplicate
    /// labels, bad literal, empty space where a point is required).
    #[error("invalid input: {0}")]
    Input(String),
    /// An operation precondition does not hold, such as a non-metric space
    /// handed to the isometry search.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A search would exceed its configured enumeration cap.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
