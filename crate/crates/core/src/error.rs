use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error("unknown indicator `{0}`")]
    UnknownIndicator(String),
    #[error("empty dataset")]
    EmptyDataset,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("self-loop border for `{0}`")]
    SelfLoop(String),
    #[error("interval has no closing simplex")]
    NoClosingSimplex,
    #[error("representative is not a cycle: {0}")]
    NotACycle(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
