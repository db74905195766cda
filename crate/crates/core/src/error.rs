use thiserror::Error;

/// Errors reported by the library.
///
/// `ContractViolation` covers precondition failures of an operation (an
/// infeasible labeling passed where a feasible one is required, overlapping
/// node sets, ...). `Internal` is reserved for broken invariants that
/// indicate a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("size mismatch: expected {expected} entries, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("operation not supported for {0} instances")]
    UnsupportedKind(&'static str),

    #[error("instance too large for exhaustive enumeration: {0}")]
    SizeCap(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::ContractViolation(msg.into())
    }

    /// True for errors caused by the input rather than by the library.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
