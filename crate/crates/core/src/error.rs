//! Error type shared across the crate.

/// Errors raised by grid construction, operators, solvers and the oracle.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Grid nodes violate the ordering or size requirements.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A constructor argument is out of its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input data contains NaN or infinite samples where finite values are required.
    #[error("non-finite data: {0}")]
    NonFiniteData(String),

    /// Input data contains negative samples where nonnegative values are required.
    #[error("negative data: {0}")]
    NegativeData(String),

    /// Two objects that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// An operation's documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
