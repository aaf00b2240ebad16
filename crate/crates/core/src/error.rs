use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid digit {0:?}: words are strings over '1' and '2'")]
    InvalidDigit(char),

    #[error("{what} {value} out of range 0..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        max: i64,
    },

    #[error("beta must lie in (0, 1], got {0}")]
    BetaOutOfRange(String),

    #[error("rank mismatch: word has rank {actual}, expected {expected}")]
    RankMismatch { expected: usize, actual: usize },

    #[error("rank({upper}) < rank({lower}): no descending paths")]
    RankOrder { lower: String, upper: String },

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
