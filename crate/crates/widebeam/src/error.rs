//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid excitation: {0}")]
    InvalidExcitation(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid current set: {0}")]
    InvalidCurrentSet(String),

    #[error("degenerate pattern: no sample above zero")]
    DegeneratePattern,

    #[error("zero total radiated power")]
    ZeroRadiatedPower,

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("unusable target: {0}")]
    UnusableTarget(String),

    #[error("out of validated range: |{0}| > 100")]
    BesselRange(f64),

    #[error("model out of validity: {0}")]
    ModelValidity(String),

    #[error("no overlapping theta range between cuts")]
    NoOverlap,

    #[error("no comparable samples above the floor")]
    NoComparableSamples,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
