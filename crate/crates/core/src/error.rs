use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the operation's domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A caller violated a documented precondition; the message names the
    /// failed condition.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// Malformed input text.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A layering could not reach every vertex, so no connected graph can
    /// complete the given partial graph under the instance.
    #[error("no connected completion: layering does not cover all vertices")]
    NoConnectedCompletion,

    /// The instance shape is outside what the operation supports.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
