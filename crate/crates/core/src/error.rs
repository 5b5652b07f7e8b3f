use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GmeError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("iteration {k} outside 0..={k_opt}")]
    OutOfRange { k: u128, k_opt: u128 },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, GmeError>;
