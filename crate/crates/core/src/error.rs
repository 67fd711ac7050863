use thiserror::Error;

/// Errors produced by the library.
///
/// `Input` covers malformed arguments and contract violations (out-of-range
/// vertices, empty sets where non-empty ones are required, invalid
/// embeddings passed to operations that need valid ones). `Resource` covers
/// exceeded enumeration budgets and size guards. `Parse` carries a line
/// number for the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
