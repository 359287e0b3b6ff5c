//! Thin singular value decomposition by one-sided (Hestenes) Jacobi.
//!
//! Columns of `M` are rotated pairwise until mutually orthogonal; this is a
//! Jacobi eigensolve of `M†M` carried out implicitly, so small singular values
//! keep full relative accuracy.

use num_complex::Complex64;

use crate::eigen::pair_rotation;
use crate::matrix::{ComplexMatrix, ZERO};

const MAX_SWEEPS: usize = 100;

/// `M = U·diag(σ)·V†` with `k = min(rows, cols)` columns in `U` and `V`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    /// Non-negative, descending.
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (r, c, k) = (self.u.rows(), self.v.rows(), self.singular_values.len());
        ComplexMatrix::from_fn(r, c, |i, j| {
            (0..k)
                .map(|t| self.u[(i, t)] * self.singular_values[t] * self.v[(j, t)].conj())
                .sum()
        })
    }

    /// Number of singular values above `tol · σ_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let top = self.singular_values.first().copied().unwrap_or(0.0);
        self.singular_values
            .iter()
            .filter(|&&s| s > rel_tol * top && s > 0.0)
            .count()
    }
}

pub fn svd(m: &ComplexMatrix) -> Svd {
    if m.rows() < m.cols() {
        let t = tall_svd(&m.adjoint());
        return Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        };
    }
    tall_svd(m)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn tall_svd(m: &ComplexMatrix) -> Svd {
    let (r, c) = (m.rows(), m.cols());
    // Column-major working copy.
    let mut w: Vec<Vec<Complex64>> = (0..c).map(|j| m.col(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..c)
        .map(|j| (0..c).map(|i| if i == j { Complex64::new(1.0, 0.0) } else { ZERO }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..c {
            for q in (p + 1)..c {
                let alpha = dot(&w[p], &w[p]).re;
                let beta = dot(&w[q], &w[q]).re;
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g < 1e-300 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let [u_pp, u_pq, u_qp, u_qq] = pair_rotation(alpha, beta, gamma);
                for cols in [&mut w, &mut v] {
                    let (head, tail) = cols.split_at_mut(q);
                    for (xp, xq) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                        (*xp, *xq) = (*xp * u_pp + *xq * u_qp, *xp * u_pq + *xq * u_qq);
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w.iter().map(|col| dot(col, col).re.sqrt()).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let top = norms.iter().copied().fold(0.0, f64::max);

    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(c);
    let mut sigma = Vec::with_capacity(c);
    let mut pending = Vec::new();
    for (slot, &j) in order.iter().enumerate() {
        let s = norms[j];
        sigma.push(s);
        if s > 0.0 && s > 1e-14 * top {
            u_cols.push(w[j].iter().map(|z| z / s).collect());
        } else {
            u_cols.push(vec![ZERO; r]);
            pending.push(slot);
        }
    }
    complete_orthonormal(&mut u_cols, &pending, r);

    let u = ComplexMatrix::from_fn(r, c, |i, t| u_cols[t][i]);
    let vm = ComplexMatrix::from_fn(c, c, |i, t| v[order[t]][i]);
    Svd {
        u,
        singular_values: sigma,
        v: vm,
    }
}

/// Fills the columns listed in `pending` with unit vectors orthogonal to all
/// other columns, drawing candidates from the standard basis.
fn complete_orthonormal(cols: &mut [Vec<Complex64>], pending: &[usize], dim: usize) {
    for &slot in pending {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for e in 0..dim {
            let mut cand = vec![ZERO; dim];
            cand[e] = Complex64::new(1.0, 0.0);
            for (k, col) in cols.iter().enumerate() {
                if k == slot || (pending.contains(&k) && col.iter().all(|z| *z == ZERO)) {
                    continue;
                }
                let proj = dot(col, &cand);
                for (x, y) in cand.iter_mut().zip(col) {
                    *x -= proj * y;
                }
            }
            let norm = dot(&cand, &cand).re.sqrt();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, cand));
            }
        }
        if let Some((norm, cand)) = best {
            cols[slot] = cand.into_iter().map(|z| z / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthonormal_columns(m: &ComplexMatrix) -> f64 {
        let g = m.adjoint().matmul(m);
        g.max_abs_diff(&ComplexMatrix::identity(m.cols()))
    }

    #[test]
    fn diagonal() {
        let s = svd(&ComplexMatrix::diag(&[3.0, 2.0]));
        assert_eq!(s.singular_values, vec![3.0, 2.0]);
        let s = svd(&ComplexMatrix::diag(&[2.0, -3.0]));
        assert_eq!(s.singular_values, vec![3.0, 2.0]);
        assert!(s.reconstruct().max_abs_diff(&ComplexMatrix::diag(&[2.0, -3.0])) < 1e-15);
    }

    #[test]
    fn rank_one_outer_product() {
        let u = [0.6, 0.0, 0.8];
        let v = [0.0, 1.0];
        let m = ComplexMatrix::from_fn(3, 2, |i, j| Complex64::new(u[i] * v[j], 0.0));
        let s = svd(&m);
        assert!((s.singular_values[0] - 1.0).abs() < 1e-15);
        assert_eq!(s.singular_values[1], 0.0);
        assert_eq!(s.rank(1e-12), 1);
        assert!(orthonormal_columns(&s.u) < 1e-14);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn wide_complex_matrix() {
        let m = ComplexMatrix::from_fn(3, 5, |i, j| {
            Complex64::new(((i * 5 + j) as f64).sin(), ((i + 2 * j) as f64).cos())
        });
        let s = svd(&m);
        assert_eq!(s.singular_values.len(), 3);
        assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-12);
        assert!(orthonormal_columns(&s.u) < 1e-12);
        assert!(orthonormal_columns(&s.v) < 1e-12);
    }

    #[test]
    fn zero_matrix() {
        let s = svd(&ComplexMatrix::zeros(3, 2));
        assert_eq!(s.singular_values, vec![0.0, 0.0]);
        assert!(orthonormal_columns(&s.u) < 1e-15);
    }
}
