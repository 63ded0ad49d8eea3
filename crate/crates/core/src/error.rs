use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    Shape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("observation mask has no observed entries")]
    EmptyMask,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unsupported transform size {size}: {reason}")]
    UnsupportedSize { size: usize, reason: String },

    #[error("column {0} of the basis matrix is zero")]
    ZeroColumn(usize),

    #[error("basis `{0}` is complex-valued and has no real coefficient form")]
    ComplexBasis(String),

    #[error("non-finite value encountered in {solver} at iteration {iteration}")]
    NonFinite { solver: &'static str, iteration: usize },

    #[error("{solver} diverged: residual {residual:.3e} exceeds 10x its minimum {minimum:.3e}")]
    Diverged {
        solver: &'static str,
        residual: f64,
        minimum: f64,
    },

    #[error("{0}")]
    Undefined(String),

    #[error("no usable data: {0}")]
    NoData(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
