//! Sums of tensor products: `A = Σ_i B_i¹ ⊗ … ⊗ B_iᵏ`.
//!
//! Two routes produce them: [`elementary`] expands over unit-matrix bases and
//! factors each basis element by index arithmetic, [`svd_route`] realigns the
//! operator and reads the factors off a singular value decomposition.

pub mod counting;
pub mod elementary;
pub mod svd_route;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{hermiticity_deviation, hermiticity_tolerance, HermitianOperator, HERMITICITY_REL_TOL};
use crate::matrix::{kron_all, ComplexMatrix};

pub use counting::{dim_gap_antisymmetric, dim_gap_symmetric};
pub use elementary::{
    decompose_antisym_basis, decompose_elementary, decompose_elementary_with, decompose_sym_basis,
    decompose_unit, split_unit_index, ElementaryBasis, ElementaryOptions, SplitIndex,
};
pub use svd_route::{decompose_svd, decompose_svd_profile, decompose_svd_with, transformed_blocks, SvdBlocks};

/// Subsystem dimensions `(d_1, …, d_k)` with `k >= 2` and every `d_j >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimProfile(Vec<usize>);

impl DimProfile {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidProfile(format!(
                "need at least two subsystems, got {dims:?}"
            )));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidProfile(format!(
                "subsystem dimension {d} < 2 in {dims:?}"
            )));
        }
        Ok(Self(dims))
    }

    pub fn bipartite(m: usize, n: usize) -> Result<Self> {
        Self::new(vec![m, n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn parties(&self) -> usize {
        self.0.len()
    }

    /// Product of all subsystem dimensions.
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Errors unless `dim` equals [`DimProfile::total`].
    pub fn check(&self, dim: usize) -> Result<()> {
        if dim != self.total() {
            return Err(Error::DimensionMismatch {
                expected: self.total(),
                found: dim,
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for DimProfile {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DimProfile> for Vec<usize> {
    fn from(p: DimProfile) -> Self {
        p.0
    }
}

impl fmt::Display for DimProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// One summand `F_1 ⊗ … ⊗ F_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub factors: Vec<ComplexMatrix>,
}

impl Term {
    pub fn new(factors: Vec<ComplexMatrix>) -> Self {
        Self { factors }
    }

    pub fn product(&self) -> ComplexMatrix {
        kron_all(&self.factors).expect("term without factors")
    }
}

/// A dimension profile plus a list of tensor-product terms.
///
/// Factors are general complex matrices so that unit-matrix expansions can be
/// represented; [`TensorFactorization::hermitian_factors`] checks the Hermitian
/// invariant the indicator routines rely on.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorFactorization {
    profile: DimProfile,
    terms: Vec<Term>,
}

impl TensorFactorization {
    pub fn new(profile: DimProfile, terms: Vec<Term>) -> Result<Self> {
        for (t, term) in terms.iter().enumerate() {
            if term.factors.len() != profile.parties() {
                return Err(Error::Arity {
                    term: t,
                    expected: profile.parties(),
                    found: term.factors.len(),
                });
            }
            for (f, &d) in term.factors.iter().zip(profile.dims()) {
                if f.rows() != d || f.cols() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: if f.rows() != d { f.rows() } else { f.cols() },
                    });
                }
            }
        }
        Ok(Self { profile, terms })
    }

    /// Builds from Hermitian factors, e.g. a witness of a separable state.
    pub fn from_hermitian(profile: DimProfile, terms: Vec<Vec<HermitianOperator>>) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|fs| Term::new(fs.into_iter().map(HermitianOperator::into_matrix).collect()))
            .collect();
        Self::new(profile, terms)
    }

    pub fn empty(profile: DimProfile) -> Self {
        Self {
            profile,
            terms: Vec::new(),
        }
    }

    pub fn profile(&self) -> &DimProfile {
        &self.profile
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// `Σ_terms F_1 ⊗ … ⊗ F_k` as a plain matrix.
    pub fn reconstruct_matrix(&self) -> ComplexMatrix {
        let n = self.profile.total();
        self.terms
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, t| &acc + &t.product())
    }

    /// True iff every factor of every term is Hermitian (default tolerance).
    pub fn is_hermitian_factorization(&self) -> bool {
        self.hermitian_factors().is_ok()
    }

    /// Returns the factors as Hermitian operators, or the first offender.
    pub fn hermitian_factors(&self) -> Result<Vec<Vec<HermitianOperator>>> {
        self.terms
            .iter()
            .enumerate()
            .map(|(t, term)| {
                term.factors
                    .iter()
                    .enumerate()
                    .map(|(f, m)| {
                        HermitianOperator::new(m.clone())
                            .map_err(|_| Error::NonHermitianFactor { term: t, factor: f })
                    })
                    .collect()
            })
            .collect()
    }

    /// Merges terms that agree in every factor except the last by summing
    /// their last factors. Order of first occurrence is kept.
    pub fn merged(&self) -> Self {
        let mut out: Vec<Term> = Vec::new();
        for term in &self.terms {
            let (last, head) = term.factors.split_last().expect("term without factors");
            match out
                .iter_mut()
                .find(|t| t.factors[..t.factors.len() - 1] == *head)
            {
                Some(existing) => {
                    let slot = existing.factors.last_mut().unwrap();
                    *slot = &*slot + last;
                }
                None => out.push(term.clone()),
            }
        }
        out.retain(|t| !t.factors.last().unwrap().is_zero(0.0));
        Self {
            profile: self.profile.clone(),
            terms: out,
        }
    }

    /// Multiplies the first factor of every term by `alpha`.
    pub fn scale_first_factors(&self, alpha: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut fs = t.factors.clone();
                fs[0] = fs[0].scale_real(alpha);
                Term::new(fs)
            })
            .collect();
        Self {
            profile: self.profile.clone(),
            terms,
        }
    }
}

/// The operator represented by `f`; the zero operator for an empty term list.
///
/// Errors if the sum is not Hermitian, which can only happen for
/// factorizations with non-Hermitian factors.
pub fn reconstruct(f: &TensorFactorization) -> Result<HermitianOperator> {
    let m = f.reconstruct_matrix();
    let deviation = hermiticity_deviation(&m);
    let tolerance = hermiticity_tolerance(&m, HERMITICITY_REL_TOL);
    if deviation > tolerance {
        return Err(Error::NotHermitian {
            deviation,
            tolerance,
        });
    }
    HermitianOperator::new(m)
}

/// `max|reconstruct(f) - a| / max|a|`.
pub fn reconstruction_error(f: &TensorFactorization, a: &ComplexMatrix) -> f64 {
    a.relative_diff(&f.reconstruct_matrix())
}
