use thiserror::Error;

pub type Result<T> = std::result::Result<T, GupError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GupError {
    /// An input lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method failed to converge.
    #[error("numeric error: {message} (residuals: {residuals:?})")]
    Numeric { message: String, residuals: Vec<f64> },

    /// The requested object does not exist for these inputs.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A result would overflow double precision.
    #[error("range error: {0}")]
    Range(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl GupError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        GupError::Domain(msg.into())
    }
}
