use thiserror::Error;

/// Errors from parsing a sort scheme or running a check.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SortError {
    /// `position` is a byte offset into the scheme text.
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    /// Every control may belong to at most one sort.
    #[error("control {control} is declared in sort {first} and again in sort {second}")]
    DuplicateControlSort {
        control: String,
        first: String,
        second: String,
    },
    /// A child expression referenced a name that is not a declared node sort.
    #[error("sort {0} is referenced but never declared")]
    UndeclaredSort(String),
    /// A checked bigraph contains a control no sort declaration covers.
    #[error("control {0} is not covered by any sort declaration")]
    UnsortedControl(String),
}

impl SortError {
    pub fn syntax(position: usize, message: impl Into<String>) -> Self {
        SortError::Syntax {
            position,
            message: message.into(),
        }
    }
}
