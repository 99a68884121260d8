use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid irrep: {0}")]
    InvalidIrrep(String),

    #[error("corrupt character table: {0}")]
    CorruptTable(String),

    #[error("empty invariant sector: no invariant states on {sites} sites")]
    EmptySector { sites: usize },

    #[error("unsupported for this symmetry family: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An internal consistency check failed; this indicates a bug rather than bad input.
    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
