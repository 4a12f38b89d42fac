//! Error type shared across the engine.

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("ill-formed map: {0}")]
    IllFormedMap(String),
    #[error("zero module: {0}")]
    ZeroModule(String),
    #[error("hypothesis not met [{name}]: {detail}")]
    Hypothesis { name: String, detail: String },
    #[error("no certified non-zerodivisor: {0}")]
    NoNzd(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn hypothesis(name: &str, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            name: name.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
