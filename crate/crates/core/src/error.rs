use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the harmonic-map toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },

    #[error("point {z} lies outside the open unit disk")]
    OutsideDisk { z: Complex64 },

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    #[error("derivative vanishes at {z}")]
    SingularPoint { z: Complex64 },

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error("exact evaluator disagrees with series by {residual:e} at {z}")]
    ExactMismatch { z: Complex64, residual: f64 },

    #[error("operation not representable in closed form: {0}")]
    NotRepresentable(&'static str),

    #[error("bracketing failed: {0}")]
    Bracketing(String),

    #[error("radius search: {0}")]
    RadiusSearch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
