#![allow(dead_code)]

use hermsep::decompose::DimProfile;
use hermsep::matrix::ComplexMatrix;

pub fn profile(dims: &[usize]) -> DimProfile {
    DimProfile::new(dims.to_vec()).unwrap()
}

/// Largest entrywise deviation relative to the reference's largest entry.
pub fn rel_err(reference: &ComplexMatrix, other: &ComplexMatrix) -> f64 {
    reference.max_abs_diff(other) / reference.max_abs().max(f64::MIN_POSITIVE)
}
