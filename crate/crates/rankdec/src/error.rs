use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("cannot parse element `{0}`")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumeration of {0} codewords exceeds the budget")]
    Budget(u128),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
