use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwlError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, TwlError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(TwlError::Domain(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(TwlError::Internal(msg.into()))
}
