use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cap exceeded: {what} passed the limit of {limit}")]
    CapExceeded { what: &'static str, limit: usize },

    #[error("bad permutation: {0}")]
    BadPermutation(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(&'static str),

    #[error("map is not an isomorphism of the two quotients: {0}")]
    BadIso(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("sigma blocks overlap on prime {0}")]
    OverlappingBlocks(u64),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
