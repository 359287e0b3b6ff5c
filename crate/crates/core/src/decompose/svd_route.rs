//! Factorization through realignment and a real SVD.
//!
//! `A = Σ B_i ⊗ C_i` iff the realigned matrix is `Σ vec(B_i)·vec(C_i)ᵗ`. For
//! Hermitian factors `B = b + i𝔅` (`b` real symmetric, `𝔅` real antisymmetric)
//! the σ-embedding of the realigned matrix, conjugated by the orthogonal
//! selector matrices `Q₁(m)ᵗ · … · Q₁(n)`, becomes block diagonal:
//!
//! ```text
//! [ Â₁₁  0  ]
//! [  0  Â₂₂ ]
//! ```
//!
//! Each diagonal block alone determines `A`, and every rank-one piece of its
//! SVD maps back to a pair of Hermitian factors.

use num_complex::Complex64;

use super::{DimProfile, TensorFactorization, Term};
use crate::error::{Error, Result};
use crate::hermitian::HermitianOperator;
use crate::matrix::{realign, sigma_embed, ComplexMatrix, I};
use crate::qmatrix::build_q1;
use crate::svd::svd;

/// Relative reconstruction tolerance of the SVD route.
pub const SVD_RECONSTRUCTION_TOL: f64 = 1e-9;

/// Singular values at or below this fraction of the largest are dropped.
const RANK_TOL: f64 = 1e-13;

/// Which diagonal blocks of the transformed matrix to decompose.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SvdBlocks {
    /// `Â₂₂` only; at most `min(m², n²)` terms.
    #[default]
    LowerRight,
    /// Both `Â₁₁` and `Â₂₂`, each weighted ½; twice as many terms.
    Full,
}

/// The four `m² x n²` blocks `[Â₁₁, Â₁₂, Â₂₁, Â₂₂]` of
/// `Q₁(m)ᵗ · σ(realign(A)) · Q₁(n)`.
pub fn transformed_blocks(a: &ComplexMatrix, m: usize, n: usize) -> Result<[ComplexMatrix; 4]> {
    let r = realign(a, m, n)?;
    let t = build_q1(m).transpose().matmul(&sigma_embed(&r)).matmul(&build_q1(n));
    let (mm, nn) = (m * m, n * n);
    Ok([
        t.block(0, 0, mm, nn),
        t.block(0, nn, mm, nn),
        t.block(mm, 0, mm, nn),
        t.block(mm, nn, mm, nn),
    ])
}

pub fn decompose_svd(a: &HermitianOperator, m: usize, n: usize) -> Result<TensorFactorization> {
    decompose_svd_with(a, m, n, SvdBlocks::default())
}

/// Splits a real `2d²` vector `[top; bottom]` into `d x d` matrices.
fn halves(x: &ComplexMatrix, d: usize) -> (ComplexMatrix, ComplexMatrix) {
    let dd = d * d;
    let top = ComplexMatrix::from_fn(d, d, |i, j| x[(i + j * d, 0)]);
    let bottom = ComplexMatrix::from_fn(d, d, |i, j| x[(dd + i + j * d, 0)]);
    (top, bottom)
}

/// `Q₁ · [pad; v]` (or `[v; pad]` when `upper`) as a column vector.
fn lift(q: &ComplexMatrix, v: &[f64], upper: bool) -> ComplexMatrix {
    let half = v.len();
    let off = if upper { 0 } else { half };
    ComplexMatrix::from_fn(q.rows(), 1, |i, _| {
        (0..half).map(|t| q[(i, off + t)] * v[t]).sum::<Complex64>()
    })
}

/// `re + i·im` for real matrices `re`, `im`.
fn combine(re: &ComplexMatrix, im: &ComplexMatrix) -> ComplexMatrix {
    re + &im.scale(I)
}

fn block_terms(blk: &ComplexMatrix, m: usize, n: usize, upper: bool, weight: f64) -> Vec<Term> {
    let (q1m, q1n) = (build_q1(m), build_q1(n));
    let s = svd(blk);
    let top = s.singular_values.first().copied().unwrap_or(0.0);
    let mut terms = Vec::new();
    for (t, &sigma) in s.singular_values.iter().enumerate() {
        if sigma <= RANK_TOL * top || sigma == 0.0 {
            continue;
        }
        let u: Vec<f64> = (0..blk.rows()).map(|i| s.u[(i, t)].re * sigma * weight).collect();
        let v: Vec<f64> = (0..blk.cols()).map(|i| s.v[(i, t)].re).collect();
        let (mut b, mut c) = if upper {
            let (xt, xb) = halves(&lift(&q1m, &u, true), m);
            let (yt, yb) = halves(&lift(&q1n, &v, true), n);
            (combine(&xb, &xt), combine(&yb, &-&yt))
        } else {
            let neg_u: Vec<f64> = u.iter().map(|x| -x).collect();
            let neg_v: Vec<f64> = v.iter().map(|x| -x).collect();
            let (xt, xb) = halves(&lift(&q1m, &neg_u, false), m);
            let (yt, yb) = halves(&lift(&q1n, &neg_v, false), n);
            (combine(&xt, &-&xb), combine(&yt, &yb))
        };
        if b.trace().re < 0.0 {
            b = -&b;
            c = -&c;
        }
        terms.push(Term::new(vec![b, c]));
    }
    terms
}

pub fn decompose_svd_with(a: &HermitianOperator, m: usize, n: usize, blocks: SvdBlocks) -> Result<TensorFactorization> {
    let profile = DimProfile::bipartite(m, n)?;
    profile.check(a.dim())?;
    let [a11, _, _, a22] = transformed_blocks(a.matrix(), m, n)?;
    let terms = match blocks {
        SvdBlocks::LowerRight => block_terms(&a22, m, n, false, 1.0),
        SvdBlocks::Full => {
            let mut t = block_terms(&a11, m, n, true, 0.5);
            t.extend(block_terms(&a22, m, n, false, 0.5));
            t
        }
    };
    let f = TensorFactorization::new(profile, terms)?;
    let error = a.matrix().max_abs_diff(&f.reconstruct_matrix());
    let tolerance = SVD_RECONSTRUCTION_TOL * a.matrix().max_abs().max(f64::MIN_POSITIVE);
    if error > tolerance {
        return Err(Error::ReconstructionFailure { error, tolerance });
    }
    Ok(f)
}

/// SVD route on any profile: the first subsystem is split off and the second
/// factor of every term is decomposed recursively.
pub fn decompose_svd_profile(a: &HermitianOperator, profile: &DimProfile) -> Result<TensorFactorization> {
    profile.check(a.dim())?;
    let dims = profile.dims();
    let rest: usize = dims[1..].iter().product();
    let head = decompose_svd(a, dims[0], rest)?;
    if dims.len() == 2 {
        return Ok(head);
    }
    let tail_profile = DimProfile::new(dims[1..].to_vec())?;
    let mut terms = Vec::new();
    for term in head.into_terms() {
        let mut fs = term.factors.into_iter();
        let b = fs.next().unwrap();
        let c = HermitianOperator::new(fs.next().unwrap())?;
        for sub in decompose_svd_profile(&c, &tail_profile)?.into_terms() {
            let mut factors = vec![b.clone()];
            factors.extend(sub.factors);
            terms.push(Term::new(factors));
        }
    }
    let f = TensorFactorization::new(profile.clone(), terms)?;
    let error = a.matrix().max_abs_diff(&f.reconstruct_matrix());
    let tolerance = SVD_RECONSTRUCTION_TOL * a.matrix().max_abs().max(f64::MIN_POSITIVE);
    if error > tolerance {
        return Err(Error::ReconstructionFailure { error, tolerance });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{kron, pauli};

    fn herm(n: usize, seed: f64) -> ComplexMatrix {
        let x = ComplexMatrix::from_fn(n, n, |i, j| {
            Complex64::new((seed + (i * 7 + j * 3) as f64).sin(), (seed * 2.0 + (i + 5 * j) as f64).cos())
        });
        &x + &x.adjoint()
    }

    #[test]
    fn off_diagonal_blocks_vanish() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let a = herm(m * n, 0.3);
            let [_, a12, a21, _] = transformed_blocks(&a, m, n).unwrap();
            assert!(a12.max_abs() < 1e-14);
            assert!(a21.max_abs() < 1e-14);
        }
    }

    #[test]
    fn product_operator_gives_one_term() {
        let b = herm(3, 1.0);
        let c = herm(2, 2.0);
        let a = HermitianOperator::new(kron(&b, &c)).unwrap();
        let f = decompose_svd(&a, 3, 2).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f.terms()[0].product().max_abs_diff(a.matrix()) < 1e-10);
    }

    #[test]
    fn sigma3_sigma3() {
        let a = HermitianOperator::new(kron(&pauli(3), &pauli(3))).unwrap();
        let f = decompose_svd(&a, 2, 2).unwrap();
        assert_eq!(f.len(), 1);
        let t = &f.terms()[0];
        for (fac, p) in t.factors.iter().zip([pauli(3), pauli(3)]) {
            let ratio = fac[(0, 0)].re;
            assert!(fac.max_abs_diff(&p.scale_real(ratio)) < 1e-14);
        }
    }

    #[test]
    fn identity_single_term() {
        let a = HermitianOperator::identity(4);
        let f = decompose_svd(&a, 2, 2).unwrap();
        assert_eq!(f.len(), 1);
        let t = &f.terms()[0];
        assert!(t.factors[0][(0, 1)].norm() < 1e-15);
        assert!((t.factors[0][(0, 0)] - t.factors[0][(1, 1)]).norm() < 1e-15);
    }

    #[test]
    fn both_variants_reconstruct() {
        for (m, n) in [(2, 2), (2, 3), (3, 3)] {
            let a = HermitianOperator::new(herm(m * n, 0.7)).unwrap();
            for blocks in [SvdBlocks::LowerRight, SvdBlocks::Full] {
                let f = decompose_svd_with(&a, m, n, blocks).unwrap();
                assert!(f.is_hermitian_factorization());
                assert!(a.matrix().relative_diff(&f.reconstruct_matrix()) < 1e-12);
            }
            assert!(decompose_svd(&a, m, n).unwrap().len() <= (m * m).min(n * n));
        }
    }

    #[test]
    fn tripartite_profile() {
        let a = HermitianOperator::new(herm(8, 1.9)).unwrap();
        let p = DimProfile::new(vec![2, 2, 2]).unwrap();
        let f = decompose_svd_profile(&a, &p).unwrap();
        assert!(f.is_hermitian_factorization());
        assert!(a.matrix().relative_diff(&f.reconstruct_matrix()) < 1e-12);
    }

    #[test]
    fn zero_operator_has_no_terms() {
        let f = decompose_svd(&HermitianOperator::zeros(6), 2, 3).unwrap();
        assert!(f.is_empty());
    }
}
