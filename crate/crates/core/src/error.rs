use thiserror::Error;

/// Errors shared by the field, transform, convolution and i/o layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field shapes do not match: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("roots are not perpendicular: |{{mu,nu}}| = {anticommutator:e} exceeds {limit:e}")]
    RootsNotPerpendicular { anticommutator: f64, limit: f64 },

    #[error("cannot build a root of -1 from a zero vector")]
    ZeroVector,

    #[error("invalid field shape: {0}")]
    InvalidShape(String),

    #[error("bad magic {found:?}, expected {expected:?}")]
    BadMagic { found: [u8; 4], expected: [u8; 4] },

    #[error("truncated payload: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },

    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),

    #[error("parse error: {0}")]
    ParseError(String),

    #[error(transparent)]
    IoError(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
