use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("q = {0} is not one of 3, 7, 11, 19, 43, 67, 163")]
    UnsupportedQ(u64),
    #[error("startup self-check failed: {0}")]
    SelfCheck(String),
    #[error("{0} is ramified in M_q (divides 2q)")]
    Ramified(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("generator search exhausted for prime above {0}")]
    GeneratorNotFound(u64),
    #[error("internal invariant failed for q={q}, p={p}: {msg}")]
    Internal { q: u64, p: u64, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
