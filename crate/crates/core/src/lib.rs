//! Tensor-product decompositions of Hermitian operators and a spectral
//! separability indicator for multipartite density matrices.

pub mod cli;
pub mod decompose;
pub mod eigen;
pub mod error;
pub mod hermitian;
pub mod indicator;
pub mod io;
pub mod matrix;
pub mod ppt;
pub mod qmatrix;
pub mod random;
pub mod states;
pub mod svd;

pub use decompose::{reconstruct, DimProfile, TensorFactorization, Term};
pub use eigen::{Extremes, Spectrum};
pub use error::{Error, Result};
pub use hermitian::HermitianOperator;
pub use matrix::ComplexMatrix;
