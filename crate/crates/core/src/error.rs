use thiserror::Error;

use crate::environment::QueryViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid obstacle: {0}")]
    InvalidObstacle(String),

    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),

    #[error("environment generation failed: {0}")]
    Generation(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid query: {0}")]
    InvalidQuery(QueryViolation),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("shape mismatch: expected {expected} values, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("malformed document: {0}")]
    Format(#[from] serde_json::Error),
}
