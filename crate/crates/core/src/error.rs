use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at a pole of the requested function.
    #[error("pole error: {0}")]
    Pole(String),

    /// Invalid construction parameters.
    #[error("construction error: {0}")]
    Construction(String),

    /// Two arguments that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A caller-side contract was violated (preconditions on data).
    #[error("contract error: {0}")]
    Contract(String),

    /// An integral failed to stabilise under refinement.
    #[error("divergence detected: {0}")]
    Divergence(String),

    /// A potential does not meet the hypotheses required by the operation.
    #[error("precondition error: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
