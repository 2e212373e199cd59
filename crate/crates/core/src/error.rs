use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} values, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The alias sum for mode `k` cancelled to (relative) zero.
    #[error("degenerate normalizer for mode {k}: H = {value:e}")]
    DegenerateNormalizer { k: usize, value: f64 },

    #[error("derivative order exceeds r−1 (requested {requested}, r = {order})")]
    DerivativeOrder { requested: u32, order: u32 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("descriptor schema error: {0}")]
    Schema(String),

    #[error("descriptor invariant violated: {0}")]
    Invariant(String),

    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}
