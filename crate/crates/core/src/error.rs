use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad parameters or descriptors supplied by a caller.
    #[error("usage: {0}")]
    Usage(String),
    /// A table or basis failed a structural requirement.
    #[error("invalid structure: {0}")]
    Structure(String),
    /// A coefficient that must be an integer came out fractional.
    #[error("non-integral coefficient: {0}")]
    NotIntegral(String),
    /// Matrix shapes do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
