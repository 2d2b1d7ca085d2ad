//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("stability violation: lambda[{index}] has real part {re} >= 0")]
    Stability { index: usize, re: f64 },
    #[error("singular eigenvalue: lambda[{index}] = 0 has no inverse")]
    Singularity { index: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("non-finite value in {tensor}")]
    NumericHealth { tensor: String },
    #[error("ingest error at byte {offset}: {message}")]
    Ingest { offset: u64, message: String },
    #[error("format error: {0}")]
    Format(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error("divergence: {0}")]
    Divergence(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
