use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad names, bad weights, bad scripts).
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// An operation was called outside its domain of definition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),
    /// A bounded search ran out of budget before reaching a verdict.
    #[error("undetermined: {0}")]
    Undetermined(String),
}

impl Error {
    /// Failures that are honest "cannot decide" outcomes rather than bad input.
    pub fn is_honest_failure(&self) -> bool {
        matches!(self, Error::UnsupportedCharacteristic(_) | Error::Undetermined(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
