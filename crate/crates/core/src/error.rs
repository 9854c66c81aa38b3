use thiserror::Error;

/// Errors raised by the algebraic and geometric operations of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rank mismatch: ℍ^{left} vs ℍ^{right}")]
    RankMismatch { left: usize, right: usize },

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),

    #[error("expected a horizontal covector (no θ factor)")]
    NotHorizontal,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for ℍ^{n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("unsupported group rank n = {0}")]
    UnsupportedRank(usize),

    #[error("degenerate box: {0}")]
    DegenerateBox(String),

    #[error("form is not a section of E₀: {0}")]
    NotRuminForm(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("exact evaluation unavailable: {0}")]
    NotExact(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid gap sequence: {0}")]
    InvalidGaps(String),

    #[error("singular matrix")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
