use crate::arith::ArithError;

/// Errors surfaced by the public API.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn from_parse(e: ArithError) -> Error {
        match e {
            ArithError::Parse { pos, msg } => Error::Parse { pos, msg },
            other => Error::Arith(other),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
