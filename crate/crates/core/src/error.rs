use thiserror::Error;

use crate::scalar::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is singular")]
    Singular,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("linear system has no solution: {0}")]
    Inconsistent(String),
    #[error("enumeration budget exceeded: affine dimension {dim} gives {candidates} candidates (budget {budget})")]
    BudgetExceeded {
        dim: usize,
        candidates: String,
        budget: u64,
    },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("{0}")]
    Dsl(#[from] crate::sweedler::DslError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Error {
        Error::Shape(msg.into())
    }
}
