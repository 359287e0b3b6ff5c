use thiserror::Error;

/// Errors produced by the decomposition and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("entry buffer has length {found}, expected {expected}")]
    BadShape { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e} > tolerance {tolerance:e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("index ({i}, {j}) out of range for a {dim}-dimensional space")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },

    #[error("invalid dimension profile: {0}")]
    InvalidProfile(String),

    #[error("term {term} has {found} factors, expected {expected}")]
    Arity { term: usize, expected: usize, found: usize },

    #[error("factor {factor} of term {term} is not Hermitian")]
    NonHermitianFactor { term: usize, factor: usize },

    #[error("factor {factor} of term {term} has least eigenvalue {min:e} < 0")]
    NegativeFactor { term: usize, factor: usize, min: f64 },

    #[error("reconstruction error {error:e} exceeds tolerance {tolerance:e}")]
    ReconstructionFailure { error: f64, tolerance: f64 },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("parameter `{name}` = {value} outside its domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
