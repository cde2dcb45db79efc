use std::io;

use thiserror::Error;

/// Errors produced by scheme construction, validation, encoding and the image codecs.
#[derive(Debug, Error)]
pub enum VssError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("row index {index} out of range for {rows} rows")]
    RowOutOfRange { index: usize, rows: usize },

    #[error("empty row set")]
    EmptyRowSet,

    #[error("value {value} out of range (expected < {bound})")]
    OutOfRange { value: usize, bound: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed image: {0}")]
    Image(String),

    #[error("pixels not in palette: {0}")]
    NotInPalette(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("metadata mismatch: {0}")]
    Metadata(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, VssError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(VssError::InvalidParameter(msg.into()))
}
