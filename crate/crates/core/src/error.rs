use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PancakeError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl PancakeError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        PancakeError::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        PancakeError::Parse {
            position,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, PancakeError>;
