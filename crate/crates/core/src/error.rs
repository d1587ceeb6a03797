use thiserror::Error;

/// Errors produced by the numerical kernels and the verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// Operand shapes do not fit together.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// An iterative method failed to converge or produced non-finite values.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Malformed textual input (norm specs, probe names, grids, check ids).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn dimension(msg: impl Into<String>) -> Error {
    Error::Dimension(msg.into())
}
