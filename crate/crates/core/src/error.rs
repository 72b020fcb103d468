use thiserror::Error;

#[derive(Debug, Error)]
pub enum SplitSpanError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a subdivision: {0}")]
    NotASubdivision(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("guard refused: {0}")]
    GuardRefusal(String),
    #[error("{0}")]
    Unsupported(String),
}
