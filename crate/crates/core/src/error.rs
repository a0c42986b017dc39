use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error)]
pub enum FwError {
    /// A parameter violates the precondition of an operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A point lies outside the domain of a map or function (e.g. a focus of `U`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A Laurent series does not carry enough tail coefficients.
    #[error("insufficient truncation: need order {needed}, have {available}")]
    InsufficientTruncation { needed: usize, available: usize },

    /// An adaptive procedure hit its refinement cap.
    #[error("no convergence in {what} after {iterations} refinements")]
    NonConvergence { what: String, iterations: usize },

    /// A built-in invariant check did not hold.
    #[error("invariant check failed: {0}")]
    CheckFailed(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl FwError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        FwError::InvalidParameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        FwError::Domain(msg.into())
    }

    pub(crate) fn no_convergence(what: impl Into<String>, iterations: usize) -> Self {
        FwError::NonConvergence {
            what: what.into(),
            iterations,
        }
    }

    /// Whether this error reports a numerical failure rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            FwError::NonConvergence { .. } | FwError::CheckFailed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, FwError>;
