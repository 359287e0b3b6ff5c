//! Elementary tensor factorization by index arithmetic.
//!
//! An index `i` of an `mn`-dimensional space splits uniquely as
//! `i = (k-1)·n + i'` with `1 <= k <= m`, `1 <= i' <= n`, which gives
//! `E_ij = E_kl ⊗ E_i'j'`. For Hermitian factors the symmetric and
//! antisymmetric basis elements factor as
//!
//! ```text
//! E_ij + E_ji   = ½[S_kl ⊗ S_i'j' − iA_kl ⊗ iA_i'j']
//! i(E_ij − E_ji) = ½[S_kl ⊗ iA_i'j' + iA_kl ⊗ S_i'j']
//! ```
//!
//! with `S_kl = E_kl + E_lk` and `A_kl = E_kl − E_lk`. Indices in this module's
//! public API are one-based to match that notation.
//!
//! Every emitted term carries its coefficient in the last factor, so leading
//! factors are always bare basis matrices and terms can be merged by exact
//! comparison.

use num_complex::Complex64;

use super::{DimProfile, TensorFactorization, Term};
use crate::error::{Error, Result};
use crate::hermitian::HermitianOperator;
use crate::matrix::{ComplexMatrix, I, ONE};

/// Basis coefficients with magnitude below this are dropped.
pub const PRUNE_TOL: f64 = 1e-13;

/// `(k, l, i', j')` from the block split of `(i, j)`, all one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitIndex {
    pub k: usize,
    pub l: usize,
    pub i_prime: usize,
    pub j_prime: usize,
}

pub fn split_unit_index(i: usize, j: usize, m: usize, n: usize) -> Result<SplitIndex> {
    let dim = m * n;
    if i == 0 || j == 0 || i > dim || j > dim {
        return Err(Error::IndexOutOfRange { i, j, dim });
    }
    Ok(SplitIndex {
        k: (i - 1) / n + 1,
        l: (j - 1) / n + 1,
        i_prime: (i - 1) % n + 1,
        j_prime: (j - 1) % n + 1,
    })
}

/// Which basis the operator is expanded over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ElementaryBasis {
    /// `{E_ii, E_ij + E_ji, i(E_ij − E_ji)}`; every factor is Hermitian.
    #[default]
    Hermitian,
    /// `{E_ij}` with (possibly complex) entry coefficients; factors are unit
    /// matrices and generally not Hermitian.
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElementaryOptions {
    pub basis: ElementaryBasis,
    pub merge: bool,
    pub prune_tol: f64,
}

impl Default for ElementaryOptions {
    fn default() -> Self {
        Self {
            basis: ElementaryBasis::Hermitian,
            merge: false,
            prune_tol: PRUNE_TOL,
        }
    }
}

fn s_mat(n: usize, k: usize, l: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(k, l)] += ONE;
    m[(l, k)] += ONE;
    m
}

fn ia_mat(n: usize, k: usize, l: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(k, l)] += I;
    m[(l, k)] -= I;
    m
}

/// Two-factor pieces for the basis element with zero-based indices.
enum Element {
    Unit(Complex64),
    Sym(f64),
    Antisym(f64),
}

fn factor_pair(el: Element, i: usize, j: usize, m: usize, n: usize) -> Vec<(ComplexMatrix, ComplexMatrix)> {
    let (k, ip) = (i / n, i % n);
    let (l, jp) = (j / n, j % n);
    match el {
        Element::Unit(c) => vec![(
            ComplexMatrix::unit(m, k, l),
            ComplexMatrix::unit(n, ip, jp).scale(c),
        )],
        Element::Sym(c) => {
            if k == l {
                vec![(ComplexMatrix::unit(m, k, k), s_mat(n, ip, jp).scale_real(c))]
            } else if ip == jp {
                vec![(s_mat(m, k, l), ComplexMatrix::unit(n, ip, ip).scale_real(c))]
            } else {
                vec![
                    (s_mat(m, k, l), s_mat(n, ip, jp).scale_real(0.5 * c)),
                    (ia_mat(m, k, l), ia_mat(n, ip, jp).scale_real(-0.5 * c)),
                ]
            }
        }
        Element::Antisym(c) => {
            if k == l {
                vec![(ComplexMatrix::unit(m, k, k), ia_mat(n, ip, jp).scale_real(c))]
            } else if ip == jp {
                vec![(ia_mat(m, k, l), ComplexMatrix::unit(n, ip, ip).scale_real(c))]
            } else {
                vec![
                    (s_mat(m, k, l), ia_mat(n, ip, jp).scale_real(0.5 * c)),
                    (ia_mat(m, k, l), s_mat(n, ip, jp).scale_real(0.5 * c)),
                ]
            }
        }
    }
}

fn bipartite_from_pairs(m: usize, n: usize, pairs: Vec<(ComplexMatrix, ComplexMatrix)>) -> Result<TensorFactorization> {
    let terms = pairs.into_iter().map(|(a, b)| Term::new(vec![a, b])).collect();
    TensorFactorization::new(DimProfile::bipartite(m, n)?, terms)
}

fn check_pair(i: usize, j: usize, m: usize, n: usize) -> Result<()> {
    split_unit_index(i, j, m, n)?;
    if i >= j {
        return Err(Error::InvalidArgument(format!(
            "basis element needs i < j, got ({i}, {j})"
        )));
    }
    Ok(())
}

/// `E_ij^{mn} = E_kl^m ⊗ E_i'j'^n` (one-based indices).
pub fn decompose_unit(i: usize, j: usize, m: usize, n: usize) -> Result<TensorFactorization> {
    split_unit_index(i, j, m, n)?;
    bipartite_from_pairs(m, n, factor_pair(Element::Unit(ONE), i - 1, j - 1, m, n))
}

/// Hermitian factorization of `E_ij + E_ji`, `i < j` (one-based).
pub fn decompose_sym_basis(i: usize, j: usize, m: usize, n: usize) -> Result<TensorFactorization> {
    check_pair(i, j, m, n)?;
    bipartite_from_pairs(m, n, factor_pair(Element::Sym(1.0), i - 1, j - 1, m, n))
}

/// Hermitian factorization of `i(E_ij − E_ji)`, `i < j` (one-based).
pub fn decompose_antisym_basis(i: usize, j: usize, m: usize, n: usize) -> Result<TensorFactorization> {
    check_pair(i, j, m, n)?;
    bipartite_from_pairs(m, n, factor_pair(Element::Antisym(1.0), i - 1, j - 1, m, n))
}

/// Expands `a` over the chosen basis on `dims`, splitting the first subsystem
/// off and recursing on the remainder.
fn expand(a: &ComplexMatrix, dims: &[usize], basis: ElementaryBasis, prune: f64) -> Vec<Vec<ComplexMatrix>> {
    if dims.len() == 1 {
        return if a.is_zero(0.0) { vec![] } else { vec![vec![a.clone()]] };
    }
    let m = dims[0];
    let n: usize = dims[1..].iter().product();
    let total = m * n;
    let mut out = Vec::new();
    let mut emit = |pairs: Vec<(ComplexMatrix, ComplexMatrix)>| {
        for (head, tail) in pairs {
            for mut rest in expand(&tail, &dims[1..], basis, 0.0) {
                let mut factors = Vec::with_capacity(dims.len());
                factors.push(head.clone());
                factors.append(&mut rest);
                out.push(factors);
            }
        }
    };
    match basis {
        ElementaryBasis::Unit => {
            for i in 0..total {
                for j in 0..total {
                    let c = a[(i, j)];
                    if c.norm() > prune && c.norm() > 0.0 {
                        emit(factor_pair(Element::Unit(c), i, j, m, n));
                    }
                }
            }
        }
        ElementaryBasis::Hermitian => {
            for i in 0..total {
                let d = a[(i, i)].re;
                if d.abs() > prune && d != 0.0 {
                    emit(factor_pair(Element::Unit(Complex64::new(d, 0.0)), i, i, m, n));
                }
                for j in (i + 1)..total {
                    let z = a[(i, j)];
                    if z.re.abs() > prune && z.re != 0.0 {
                        emit(factor_pair(Element::Sym(z.re), i, j, m, n));
                    }
                    if z.im.abs() > prune && z.im != 0.0 {
                        emit(factor_pair(Element::Antisym(z.im), i, j, m, n));
                    }
                }
            }
        }
    }
    out
}

/// Elementary factorization over the Hermitian basis, unmerged.
pub fn decompose_elementary(a: &HermitianOperator, profile: &DimProfile) -> Result<TensorFactorization> {
    decompose_elementary_with(a, profile, ElementaryOptions::default())
}

pub fn decompose_elementary_with(
    a: &HermitianOperator,
    profile: &DimProfile,
    opts: ElementaryOptions,
) -> Result<TensorFactorization> {
    profile.check(a.dim())?;
    let terms = expand(a.matrix(), profile.dims(), opts.basis, opts.prune_tol)
        .into_iter()
        .map(Term::new)
        .collect();
    let f = TensorFactorization::new(profile.clone(), terms)?;
    let f = if opts.merge { f.merged() } else { f };

    // The default prune level may drop coefficients near 1e-13 on small-scale
    // inputs, so it is allowed for; a coarser user prune level is not.
    let error = a.matrix().max_abs_diff(&f.reconstruct_matrix());
    let tolerance = 1e-12 * a.matrix().max_abs() + 4.0 * PRUNE_TOL;
    if error > tolerance {
        return Err(Error::ReconstructionFailure { error, tolerance });
    }
    Ok(f)
}
