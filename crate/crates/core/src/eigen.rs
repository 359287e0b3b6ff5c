//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `A_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the
//! iteration works on complex Hermitian input directly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hermitian::HermitianOperator;
use crate::matrix::{ComplexMatrix, ZERO};

const MAX_SWEEPS: usize = 100;

/// Least and greatest eigenvalue of a Hermitian operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extremes {
    pub min: f64,
    pub max: f64,
}

impl Extremes {
    pub fn new(min: f64, max: f64) -> Self {
        debug_assert!(min <= max, "extremes out of order: {min} > {max}");
        Self { min, max }
    }

    /// `M - m`.
    pub fn spread(&self) -> f64 {
        self.max - self.min
    }

    /// Extremes of `s·P` given those of `P`.
    pub fn scaled(&self, s: f64) -> Self {
        scale_extremes(s, *self)
    }
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: Option<ComplexMatrix>,
}

impl Spectrum {
    pub fn extremes(&self) -> Extremes {
        match (self.eigenvalues.first(), self.eigenvalues.last()) {
            (Some(&lo), Some(&hi)) => Extremes::new(lo, hi),
            _ => Extremes::new(0.0, 0.0),
        }
    }

    /// `V·diag(λ)·V†`, if eigenvectors were kept.
    pub fn reconstruct(&self) -> Option<ComplexMatrix> {
        let v = self.eigenvectors.as_ref()?;
        let n = self.eigenvalues.len();
        Some(ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)].conj())
                .sum()
        }))
    }
}

/// Full eigendecomposition with eigenvectors.
pub fn eigh(a: &HermitianOperator) -> Spectrum {
    jacobi(a.matrix(), true)
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(a: &HermitianOperator) -> Vec<f64> {
    jacobi(a.matrix(), false).eigenvalues
}

pub fn eig_extremes(a: &HermitianOperator) -> Extremes {
    jacobi(a.matrix(), false).extremes()
}

/// Extremes of `s·P` from those of `P`:
/// `m(sP) = ((s+|s|)/2)·m + ((s-|s|)/2)·M`, and symmetrically for `M(sP)`.
pub fn scale_extremes(s: f64, p: Extremes) -> Extremes {
    let pos = (s + s.abs()) / 2.0;
    let neg = (s - s.abs()) / 2.0;
    Extremes {
        min: pos * p.min + neg * p.max,
        max: pos * p.max + neg * p.min,
    }
}

fn jacobi(input: &ComplexMatrix, want_vectors: bool) -> Spectrum {
    let n = input.rows();
    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(input[(i, i)].re, 0.0)
        } else {
            (input[(i, j)] + input[(j, i)].conj()) * 0.5
        }
    });
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));

    let frob = a.frobenius_norm();
    if frob > 0.0 {
        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
                .map(|(p, q)| a[(p, q)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= 1e-15 * frob {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, v.as_mut(), p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));
    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let eigenvectors = v.map(|v| ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]));
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}

/// Unitary `[[u_pp, u_pq], [u_qp, u_qq]]` that diagonalises the Hermitian 2x2
/// block `[[app, b], [conj(b), aqq]]` under `U† · · U`.
pub(crate) fn pair_rotation(app: f64, aqq: f64, b: Complex64) -> [Complex64; 4] {
    let babs = b.norm();
    let phase = b / babs; // e^{iφ}
    let theta = (aqq - app) / (2.0 * babs);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    [
        Complex64::new(c, 0.0),
        Complex64::new(s, 0.0),
        -phase.conj() * s,
        phase.conj() * c,
    ]
}

fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let b = a[(p, q)];
    if b.norm() < 1e-300 {
        return;
    }
    let [u_pp, u_pq, u_qp, u_qq] = pair_rotation(a[(p, p)].re, a[(q, q)].re, b);

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * u_pp + vkq * u_qp;
            v[(k, q)] = vkp * u_pq + vkq * u_qq;
        }
    }
}
