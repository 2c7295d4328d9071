use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates a documented precondition.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A computed object failed a structural validation (integrality, Hasse bound, ...).
    #[error("validation failed: {0}")]
    Validation(String),
    /// Request lies outside the supported range of the implementation.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A resource budget (field size, enumeration radius, ...) would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Argument outside the domain of a function (poles, convergence region).
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative numerical routine did not converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::Invalid(format!($($arg)*)) };
}
pub(crate) use invalid;
