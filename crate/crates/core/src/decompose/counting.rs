//! Dimension counts comparing symmetric (antisymmetric) matrices of size
//! `mn` with tensor products of symmetric (antisymmetric) factors.

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, t| acc * (n - t) / (t + 1))
}

/// `C(mn+1, 2) − C(m+1, 2)·C(n+1, 2)`.
pub fn dim_gap_symmetric(m: usize, n: usize) -> i64 {
    let (m, n) = (m as i64, n as i64);
    binom(m * n + 1, 2) - binom(m + 1, 2) * binom(n + 1, 2)
}

/// `C(m, 2)·C(n, 2)`, the closed form of [`dim_gap_symmetric`].
pub fn dim_gap_symmetric_closed(m: usize, n: usize) -> i64 {
    binom(m as i64, 2) * binom(n as i64, 2)
}

/// `C(mn−1, 2) − C(m−1, 2)·C(n−1, 2)`.
pub fn dim_gap_antisymmetric(m: usize, n: usize) -> i64 {
    let (m, n) = (m as i64, n as i64);
    binom(m * n - 1, 2) - binom(m - 1, 2) * binom(n - 1, 2)
}

/// `C(m+1, 2)·C(n+1, 2) − 1`, the stated closed form of [`dim_gap_antisymmetric`].
///
/// The two agree only at `m = n = 1`; see the tests.
pub fn dim_gap_antisymmetric_closed(m: usize, n: usize) -> i64 {
    binom(m as i64 + 1, 2) * binom(n as i64 + 1, 2) - 1
}
