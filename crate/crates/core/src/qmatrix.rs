//! Selector matrices splitting `m²`-vectors (column-stacked `m x m` matrices)
//! into antisymmetric and symmetric coordinates.
//!
//! Row indices follow the column-stacked order `11, 21, …, m1, 12, …, mm`, so
//! the entry `kl` (one-based) sits at zero-based row `(k-1) + (l-1)·m`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::matrix::ComplexMatrix;
use num_complex::Complex64;

fn row(k: usize, l: usize, m: usize) -> usize {
    k + l * m
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `m² x m(m-1)/2`: columns `{e_kl, -e_lk}` for `k > l`, ordered
/// `{21, -12}, {31, -13}, …, {m1, -1m}, {32, -23}, …`.
pub fn build_qs(m: usize) -> ComplexMatrix {
    build_qs_scaled(m, 1.0)
}

/// `m² x m(m+1)/2`: columns `{e_ll}` and `{e_kl, e_lk}` (`k > l`), ordered
/// `{11}, {21, 12}, …, {m1, 1m}, {22}, {32, 23}, …, {mm}`.
pub fn build_qa(m: usize) -> ComplexMatrix {
    build_qa_scaled(m, 1.0)
}

fn build_qs_scaled(m: usize, w: f64) -> ComplexMatrix {
    let mut q = ComplexMatrix::zeros(m * m, m * (m.saturating_sub(1)) / 2);
    let mut col = 0;
    for l in 0..m {
        for k in (l + 1)..m {
            q[(row(k, l, m), col)] = re(w);
            q[(row(l, k, m), col)] = re(-w);
            col += 1;
        }
    }
    q
}

fn build_qa_scaled(m: usize, w: f64) -> ComplexMatrix {
    let mut q = ComplexMatrix::zeros(m * m, m * (m + 1) / 2);
    let mut col = 0;
    for l in 0..m {
        q[(row(l, l, m), col)] = re(1.0);
        col += 1;
        for k in (l + 1)..m {
            q[(row(k, l, m), col)] = re(w);
            q[(row(l, k, m), col)] = re(w);
            col += 1;
        }
    }
    q
}

/// Column-normalised `Q_s`.
pub fn build_qs_normalized(m: usize) -> ComplexMatrix {
    build_qs_scaled(m, FRAC_1_SQRT_2)
}

/// Column-normalised `Q_a`.
pub fn build_qa_normalized(m: usize) -> ComplexMatrix {
    build_qa_scaled(m, FRAC_1_SQRT_2)
}

/// The square orthogonal `2m² x 2m²` matrix
///
/// ```text
/// [ Q̄s  0   0   Q̄a ]
/// [ 0   Q̄a  Q̄s  0  ]
/// ```
///
/// Its first `m²` columns carry (antisymmetric top, symmetric bottom)
/// coordinates and its last `m²` columns (antisymmetric bottom, symmetric top).
pub fn build_q1(m: usize) -> ComplexMatrix {
    let qs = build_qs_normalized(m);
    let qa = build_qa_normalized(m);
    let (ns, na, mm) = (qs.cols(), qa.cols(), m * m);
    let mut q = ComplexMatrix::zeros(2 * mm, 2 * mm);
    let offsets = [0, ns, ns + na, ns + na + ns];
    for i in 0..mm {
        for j in 0..ns {
            q[(i, offsets[0] + j)] = qs[(i, j)];
            q[(mm + i, offsets[2] + j)] = qs[(i, j)];
        }
        for j in 0..na {
            q[(mm + i, offsets[1] + j)] = qa[(i, j)];
            q[(i, offsets[3] + j)] = qa[(i, j)];
        }
    }
    q
}
