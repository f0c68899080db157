use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix must contain at least one row")]
    Empty,

    #[error("row {index} duplicates row {first}; rows must be distinct")]
    DuplicateRow { index: usize, first: usize },

    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("width {width} is outside the supported range 1..={cap}")]
    WidthCapExceeded { width: usize, cap: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("closure exceeded the configured bound of {limit} rows")]
    ClosureLimitExceeded { limit: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("row is not decomposable over the basis")]
    NotDecomposable,

    #[error("every member of the family is empty; no witness element exists")]
    AllEmpty,

    #[error("basis verification failed: {0}")]
    BasisVerificationFailed(String),

    #[error("group axiom failed: {0}")]
    GroupAxiomFailed(String),

    #[error("witness verification failed: {0}")]
    WitnessFailed(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{theorem} failed on a family; reproducer:\n{reproducer}")]
    TheoremFailed {
        theorem: String,
        reproducer: String,
        dump: Option<PathBuf>,
    },

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
