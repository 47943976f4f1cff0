use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("highest weight must have non-negative integer coordinates, got ({0}, {1})")]
    NotDominantIntegral(String, String),

    #[error("b must be a positive real number, got {0}")]
    NonPositiveB(f64),

    #[error("beta is not real at b = {b}: 8 - 15 Q^2 = {value}")]
    NonRealBeta { b: f64, value: f64 },

    #[error("invalid rational model ({p}, {p_prime}): {reason}")]
    InvalidModel { p: i64, p_prime: i64, reason: String },

    #[error("degenerate indices must be positive integers, got {0}")]
    InvalidIndices(String),

    #[error("indices {0} are not a field of the Kac table")]
    NotInKacTable(String),

    #[error("no degenerate representative: {0}")]
    NoSpecialization(String),

    #[error("constraint system has no solution")]
    NoSolution,

    #[error("invalid constraint spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
