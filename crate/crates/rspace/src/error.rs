use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("blocks are not block-ordered: {0}")]
    NotBlockOrdered(String),
    #[error("operation not defined for space {0}")]
    WrongSpace(String),
    #[error("unsupported space {0}")]
    UnsupportedSpace(String),
    #[error("mixed-space comparison: {0} vs {1}")]
    MixedSpaces(String, String),
    #[error("horizon exceeded: requested {requested}, limit {limit}")]
    HorizonExceeded { requested: usize, limit: usize },
    #[error("move pool is empty")]
    EmptyPool,
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("untranslatable move: {0}")]
    Untranslatable(String),
    #[error("malformed element: {0}")]
    Malformed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown check: {0}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
