use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singularity at u = {pole}")]
    Singularity { pole: f64 },

    #[error("convergence failure: {message} (estimated error {error_estimate:e} after {evaluations} evaluations)")]
    Convergence {
        message: String,
        error_estimate: f64,
        evaluations: u64,
    },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("numerical differentiation failed for derivative order {order}: {message}")]
    Differentiation { order: usize, message: String },

    #[error("degenerate estimate: {0}")]
    DegenerateEstimate(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
