use std::ops::{Add, Sub};

use num_complex::Complex64;

use crate::eigen::{self, Extremes, Spectrum};
use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix};

/// Relative Hermiticity tolerance applied to `max|entry|`.
pub const HERMITICITY_REL_TOL: f64 = 1e-12;
/// Absolute floor for the Hermiticity tolerance.
pub const HERMITICITY_ABS_FLOOR: f64 = 1e-14;
/// Relative PSD tolerance, applied to `max(1, max|entry|)`.
pub const PSD_REL_TOL: f64 = 1e-10;

/// `max_ij |A_ij - conj(A_ji)|`.
pub fn hermiticity_deviation(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn hermiticity_tolerance(a: &ComplexMatrix, rel: f64) -> f64 {
    (rel * a.max_abs()).max(HERMITICITY_ABS_FLOOR)
}

/// A square complex matrix equal to its conjugate transpose (within tolerance).
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    /// Validates Hermiticity at the default tolerance.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, HERMITICITY_REL_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, rel_tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = hermiticity_deviation(&matrix);
        let tolerance = hermiticity_tolerance(&matrix, rel_tol);
        if deviation > tolerance {
            return Err(Error::NotHermitian {
                deviation,
                tolerance,
            });
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix known to be Hermitian by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_trusted(ComplexMatrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_trusted(ComplexMatrix::zeros(n, n))
    }

    pub fn diag(values: &[f64]) -> Self {
        Self::from_trusted(ComplexMatrix::diag(values))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_trusted(self.matrix.scale_real(s))
    }

    /// `A - s·I`.
    pub fn shift(&self, s: f64) -> Self {
        let mut m = self.matrix.clone();
        for i in 0..self.dim() {
            m[(i, i)] -= Complex64::new(s, 0.0);
        }
        Self::from_trusted(m)
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self::from_trusted(kron(&self.matrix, &other.matrix))
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn spectrum(&self) -> Spectrum {
        eigen::eigh(self)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigen::eigvalsh(self)
    }

    /// Least and greatest eigenvalues.
    pub fn extremes(&self) -> Extremes {
        eigen::eig_extremes(self)
    }

    pub fn default_psd_tolerance(&self) -> f64 {
        PSD_REL_TOL * self.matrix.max_abs().max(1.0)
    }

    pub fn is_psd(&self) -> bool {
        is_psd(self, self.default_psd_tolerance())
    }

    /// Checks PSD and unit trace, both to `tol`.
    pub fn check_density(&self, tol: f64) -> Result<()> {
        let tr = self.trace();
        if (tr - 1.0).abs() > tol {
            return Err(Error::NotDensityMatrix(format!("trace {tr} differs from 1")));
        }
        let min = self.extremes().min;
        if min < -tol {
            return Err(Error::NotDensityMatrix(format!(
                "least eigenvalue {min:e} is negative"
            )));
        }
        Ok(())
    }
}

/// True iff the least eigenvalue is `>= -tol`.
pub fn is_psd(a: &HermitianOperator, tol: f64) -> bool {
    a.extremes().min >= -tol
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;

    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator::from_trusted(&self.matrix + &rhs.matrix)
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;

    fn sub(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator::from_trusted(&self.matrix - &rhs.matrix)
    }
}

impl TryFrom<ComplexMatrix> for HermitianOperator {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<HermitianOperator> for ComplexMatrix {
    fn from(h: HermitianOperator) -> Self {
        h.matrix
    }
}
