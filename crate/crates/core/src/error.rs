use thiserror::Error;

/// Errors produced by the construction and analysis routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("shift {shift} out of range for circulant size {r}")]
    ShiftOutOfRange { shift: usize, r: usize },

    #[error("invalid base matrix: {0}")]
    InvalidBase(String),

    #[error("invalid lift spec: {0}")]
    InvalidSpec(String),

    #[error("overlapping permutation terms in cell ({row}, {col})")]
    OverlappingTerms { row: usize, col: usize },

    #[error("mask removes a nonexistent edge at ({row}, {col})")]
    MaskOutsideSupport { row: usize, col: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("empty matrix")]
    EmptyMatrix,

    #[error("permanent of a {0}x{0} matrix exceeds the configured limit")]
    PermanentTooLarge(usize),

    #[error("no non-zero permanent sum; the bound is undefined")]
    BoundUndefined,

    #[error("dimension {k} is too large for exhaustive enumeration (limit {limit})")]
    DimensionTooLarge { k: usize, limit: usize },

    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown condition symbol '{0}'")]
    UnknownSymbol(char),

    #[error("condition references {0}, which is masked out of the grid")]
    MissingSymbol(char),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
