//! Cross-checks of the in-crate Jacobi eigensolver, one-sided SVD and
//! realignment against nalgebra.

mod common;

use common::profile;
use hermsep::eigen::{eigh, eigvalsh};
use hermsep::matrix::{kron, realign, ComplexMatrix};
use hermsep::ppt::ppt_min_eig;
use hermsep::random::{random_hermitian, rng};
use hermsep::svd::svd;
use nalgebra::{Complex, DMatrix};
use rand::Rng;

fn to_na(m: &ComplexMatrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn random_matrix(rows: usize, cols: usize, r: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
    })
}

#[test]
fn eigenvalues_match_nalgebra() {
    let mut r = rng(11);
    for n in 1..=12 {
        let a = random_hermitian(n, &mut r);
        let mut expected: Vec<f64> = to_na(a.matrix()).symmetric_eigenvalues().iter().copied().collect();
        expected.sort_by(f64::total_cmp);
        let got = eigvalsh(&a);
        for (g, e) in got.iter().zip(&expected) {
            assert!((g - e).abs() <= 1e-12, "n={n}: {g} vs {e}");
        }
        let back = eigh(&a).reconstruct().unwrap();
        assert!(back.max_abs_diff(a.matrix()) <= 1e-12);
    }
}

#[test]
fn singular_values_match_nalgebra() {
    let mut r = rng(12);
    for (rows, cols) in [(1, 1), (3, 3), (4, 9), (9, 4), (8, 8), (18, 18), (16, 12)] {
        let m = random_matrix(rows, cols, &mut r);
        let ours = svd(&m);
        let theirs = to_na(&m).singular_values();
        let mut expected: Vec<f64> = theirs.iter().copied().collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        for (g, e) in ours.singular_values.iter().zip(&expected) {
            assert!((g - e).abs() <= 1e-12, "{rows}x{cols}: {g} vs {e}");
        }
        assert!(ours.reconstruct().max_abs_diff(&m) <= 1e-12);
    }
}

#[test]
fn realignment_of_product_has_rank_one() {
    let mut r = rng(13);
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 4)] {
        let (b, c) = (random_matrix(m, m, &mut r), random_matrix(n, n, &mut r));
        let z = realign(&kron(&b, &c), m, n).unwrap();
        let sv = to_na(&z).singular_values();
        let top = sv.max();
        assert!(sv.iter().filter(|&&s| s > 1e-12 * top).count() == 1, "({m},{n})");
        let expected = to_na(&b).norm() * to_na(&c).norm();
        assert!((top - expected).abs() <= 1e-12 * expected);
    }
}

#[test]
fn ppt_minimum_matches_nalgebra_partial_transpose() {
    let mut r = rng(14);
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let a = random_hermitian(m * n, &mut r);
        // Independent partial transpose on the second factor via index arithmetic.
        let src = to_na(a.matrix());
        let pt = DMatrix::from_fn(m * n, m * n, |row, col| {
            let (i, k) = (row / n, row % n);
            let (j, l) = (col / n, col % n);
            src[(i * n + l, j * n + k)]
        });
        let expected = pt.symmetric_eigenvalues().min();
        let got = ppt_min_eig(&a, &profile(&[m, n])).unwrap();
        assert!((got - expected).abs() <= 1e-12, "({m},{n}): {got} vs {expected}");
    }
}
