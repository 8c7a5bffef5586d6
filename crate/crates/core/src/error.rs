use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{}: unrecognized format", path.display())]
    UnrecognizedFormat { path: PathBuf },

    #[error("{}: truncated file (expected {expected} bytes, found {actual})", path.display())]
    Truncated {
        path: PathBuf,
        expected: u64,
        actual: u64,
    },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("zero-norm embedding at row {row}")]
    ZeroNorm { row: usize },

    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },

    #[error("duplicate id {id:?} on line {line}")]
    DuplicateId { id: String, line: usize },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("invalid similarity matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid order file: {0}")]
    InvalidOrder(String),

    #[error("{name} out of range: {message}")]
    OutOfRange { name: &'static str, message: String },

    #[error("no grams: every sample is shorter than {m} tokens")]
    NoGrams { m: usize },

    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn out_of_range(name: &'static str, message: impl Into<String>) -> Self {
        Error::OutOfRange {
            name,
            message: message.into(),
        }
    }

    /// True for failures of the filesystem rather than of the content.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
