use thiserror::Error;

/// Errors raised by model-space operations and the checks built on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("ambiguous geodesic: {0}")]
    Ambiguous(String),
    #[error("unsupported for this model: {0}")]
    Unsupported(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("root search failed: {0}")]
    Search(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(LabError::Domain(msg.into()))
}

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(LabError::Unsupported(msg.into()))
}
