//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation undefined at zero")]
    ValuationAtZero,

    #[error("not a unit of Z[1/{p}]: {value}")]
    NotAUnit { p: u32, value: String },

    #[error("{p} is not a prime")]
    NotPrime { p: u32 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix entry {entry} lies outside {ring}")]
    EntryOutsideRing { entry: String, ring: String },

    #[error("matrix is not invertible over {ring} (det = {det})")]
    NotInvertibleOver { det: String, ring: String },

    #[error("matrix entry {entry} is not an integer")]
    NonIntegerEntry { entry: String },

    #[error("matrix is singular over Q")]
    SingularMatrix,

    #[error("incompatible (N, eps) for this theta")]
    IncompatibleAutomorphism,

    #[error("general theta requires explicit search bound")]
    GeneralThetaNeedsBound,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
