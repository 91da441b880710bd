use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("letter {letter} at position {position} is outside the alphabet [0, {alphabet_size})")]
    LetterOutOfRange {
        position: usize,
        letter: i64,
        alphabet_size: usize,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unknown letter {0}")]
    UnknownLetter(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn argument<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
