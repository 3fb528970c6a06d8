use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("parameter condition violated at ({i},{j}): {identity}")]
    Condition { i: usize, j: usize, identity: String },
    #[error("unknown preset: {0}")]
    UnknownPreset(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("non-integral exponent: {0}")]
    NonIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inadmissible quiver parameters: {0}")]
    Inadmissible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
