use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("truncation {available} is too low, level {needed} is required")]
    Truncation { needed: usize, available: usize },
    #[error("not a quasi-isomorphism: {0}")]
    NotQuasiIso(String),
    #[error("square does not commute: {0}")]
    NotCommuting(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
