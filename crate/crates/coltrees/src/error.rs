use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty matrix text")]
    EmptyMatrix,
    #[error("row {row}: expected {expected} entries, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column {col}: entry {found:?} is not 0 or 1")]
    BadEntry { row: usize, col: usize, found: String },
    #[error("size mismatch: {left} colors vs {right} colors")]
    SizeMismatch { left: usize, right: usize },
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("{what} is out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("invalid rewrite move: {0}")]
    InvalidMove(String),
    #[error("invalid Dyck path: {0}")]
    InvalidPath(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("coloring violates the matrix at vertex {vertex}")]
    InvalidColoring { vertex: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("non-integral value {0}")]
    NonIntegral(String),
    #[error("odd power of the square-root variable survived: {0}")]
    OddSqrtPower(String),
    #[error("block dimensions do not fit the construction: {0}")]
    TemplateMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
