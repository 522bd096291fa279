use thiserror::Error;

/// Formula parse failure, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            position,
            message: message.into(),
        }
    }
}

/// Model checking failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    /// The formula references an atom the model does not define.
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),

    /// The model is structurally broken (bad initial state or transition
    /// endpoints out of range).
    #[error("invalid model: {0}")]
    InvalidModel(String),
}
