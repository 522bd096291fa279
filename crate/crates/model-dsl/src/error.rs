use thiserror::Error;

/// Errors raised while parsing or resolving a model file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    /// Lexical or grammatical error, with a 1-based source position.
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    /// `use` of a rule pack this tool does not ship.
    #[error("unknown import `{0}`: only `gdpr` is available")]
    UnknownImport(String),
    /// Two reaction rules share a name.
    #[error("reaction rule `{0}` is defined twice")]
    DuplicateRule(String),
    /// An expression references a control that is neither declared nor
    /// provided by an imported pack, and is not a defined bigraph.
    #[error("unknown control `{0}`")]
    UnknownControl(String),
    /// The file parsed but does not describe a runnable model.
    #[error("{0}")]
    Invalid(String),
}

impl DslError {
    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        DslError::Invalid(message.into())
    }
}
