use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("size limit exceeded: {what} = {value} (limit {limit})")]
    SizeLimit { what: &'static str, value: u64, limit: u64 },

    #[error("algebra is not abelian")]
    NotAbelian,

    #[error("algebra is not p-nilpotent")]
    NotPNilpotent,

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("subspace is not a restricted ideal: {0}")]
    NotAnIdeal(String),

    #[error("field mismatch between operands")]
    FieldMismatch,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
