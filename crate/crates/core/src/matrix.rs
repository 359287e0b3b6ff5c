//! Dense row-major complex matrices and the reshaping operations used by the
//! decompositions: Kronecker products, column-stacking, realignment and the
//! real embedding of a complex matrix.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// A dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// The unit matrix `E_ij` of size `n`, zero-based indices.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = ONE;
        m
    }

    /// Builds a matrix from a row-major buffer, rejecting NaN/Inf entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadShape {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::BadShape {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_vec(r, c, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn re(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].re).collect())
            .collect()
    }

    pub fn im(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].im).collect())
            .collect()
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max|A - B| / max(max|A|, tiny)`, with `self` as the reference.
    pub fn relative_diff(&self, other: &Self) -> f64 {
        self.max_abs_diff(other) / self.max_abs().max(f64::MIN_POSITIVE)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Sub-block of `rows` x `cols` starting at (`r0`, `c0`).
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca, rb, cb) = (a.rows, a.cols, b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let s = a[(i, j)];
            if s == ZERO {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a non-empty list of factors, folded left to right.
pub fn kron_all<'a, I>(factors: I) -> Option<ComplexMatrix>
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    factors.into_iter().fold(None, |acc, f| match acc {
        None => Some(f.clone()),
        Some(a) => Some(kron(&a, f)),
    })
}

/// Column-stacking: `[t11, …, tm1, t12, …, tmn]`.
pub fn vec(t: &ComplexMatrix) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(t.rows * t.cols);
    for j in 0..t.cols {
        for i in 0..t.rows {
            out.push(t[(i, j)]);
        }
    }
    out
}

/// Inverse of [`vec`] for a `rows` x `cols` matrix.
pub fn unvec(v: &[Complex64], rows: usize, cols: usize) -> ComplexMatrix {
    assert_eq!(v.len(), rows * cols, "unvec length mismatch");
    ComplexMatrix::from_fn(rows, cols, |i, j| v[j * rows + i])
}

/// Realignment of an `(mn)x(mn)` matrix viewed as `m x m` blocks of size `n x n`.
///
/// The result is `m² x n²`; the row of block `(k, l)` is `vec(Z_kl)ᵗ`, with block
/// rows enumerated column-major: (1,1), (2,1), …, (m,1), (1,2), …, (m,m).
pub fn realign(z: &ComplexMatrix, m: usize, n: usize) -> Result<ComplexMatrix> {
    if z.rows != m * n || z.cols != m * n {
        return Err(Error::DimensionMismatch {
            expected: m * n,
            found: if z.rows != m * n { z.rows } else { z.cols },
        });
    }
    let mut out = ComplexMatrix::zeros(m * m, n * n);
    for l in 0..m {
        for k in 0..m {
            let row = k + l * m;
            for jp in 0..n {
                for ip in 0..n {
                    out[(row, ip + jp * n)] = z[(k * n + ip, l * n + jp)];
                }
            }
        }
    }
    Ok(out)
}

/// Real embedding `[[Aᴿ, Aᴵ], [-Aᴵ, Aᴿ]]` of a complex matrix (entries stored
/// with zero imaginary part).
pub fn sigma_embed(a: &ComplexMatrix) -> ComplexMatrix {
    let (r, c) = (a.rows, a.cols);
    let mut out = ComplexMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = a[(i, j)];
            out[(i, j)] = Complex64::new(z.re, 0.0);
            out[(i, j + c)] = Complex64::new(z.im, 0.0);
            out[(i + r, j)] = Complex64::new(-z.im, 0.0);
            out[(i + r, j + c)] = Complex64::new(z.re, 0.0);
        }
    }
    out
}

/// Pauli matrices σ₀…σ₃.
pub fn pauli(which: usize) -> ComplexMatrix {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let data = match which {
        0 => vec![c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)],
        1 => vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)],
        2 => vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)],
        3 => vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)],
        _ => panic!("no Pauli matrix σ{which}"),
    };
    ComplexMatrix { rows: 2, cols: 2, data }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kron_identity_and_units() {
        assert_eq!(kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
        // E12 (2) ⊗ E12 (4) = E16 (8), one-based.
        let e = kron(&ComplexMatrix::unit(2, 0, 1), &ComplexMatrix::unit(4, 0, 1));
        assert_eq!(e, ComplexMatrix::unit(8, 0, 5));
        let zz = kron(&pauli(3), &pauli(3));
        assert_eq!(zz, ComplexMatrix::diag(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_rectangular_shape() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0, 3.0]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[vec![1.0], vec![-1.0]]).unwrap();
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (2, 3));
        assert_eq!(k[(1, 2)], c(-3.0));
    }

    #[test]
    fn vec_is_column_stacked() {
        let t = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(vec(&t), vec![c(1.), c(3.), c(2.), c(4.)]);
        assert_eq!(vec(&ComplexMatrix::unit(2, 0, 1)), vec![c(0.), c(0.), c(1.), c(0.)]);
        let row = ComplexMatrix::from_real_rows(&[vec![5.0, 6.0, 7.0]]).unwrap();
        assert_eq!(vec(&row), vec![c(5.), c(6.), c(7.)]);
        assert_eq!(unvec(&vec(&t), 2, 2), t);
    }

    #[test]
    fn realign_single_block() {
        let r = realign(&ComplexMatrix::unit(4, 0, 0), 2, 2).unwrap();
        let mut expected = ComplexMatrix::zeros(4, 4);
        expected[(0, 0)] = ONE;
        assert_eq!(r, expected);
    }

    #[test]
    fn realign_identity() {
        let r = realign(&ComplexMatrix::identity(4), 2, 2).unwrap();
        let mut expected = ComplexMatrix::zeros(4, 4);
        for row in [0, 3] {
            expected[(row, 0)] = ONE;
            expected[(row, 3)] = ONE;
        }
        assert_eq!(r, expected);
    }

    #[test]
    fn realign_rejects_wrong_shape() {
        assert!(matches!(
            realign(&ComplexMatrix::identity(5), 2, 2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn realign_of_product_is_outer_product_of_vecs() {
        let b = ComplexMatrix::from_fn(3, 3, |i, j| Complex64::new(i as f64 + 1.0, j as f64 - 0.5));
        let cm = ComplexMatrix::from_fn(2, 2, |i, j| Complex64::new((i * 2 + j) as f64, 1.0));
        let r = realign(&kron(&b, &cm), 3, 2).unwrap();
        let (vb, vc) = (vec(&b), vec(&cm));
        for (p, x) in vb.iter().enumerate() {
            for (q, y) in vc.iter().enumerate() {
                assert!((r[(p, q)] - x * y).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn sigma_embed_of_pauli_y() {
        let s = sigma_embed(&pauli(2));
        let expected = ComplexMatrix::from_real_rows(&[
            vec![0., 0., 0., -1.],
            vec![0., 0., 1., 0.],
            vec![0., 1., 0., 0.],
            vec![-1., 0., 0., 0.],
        ])
        .unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn sigma_embed_of_real_symmetric_is_block_diagonal() {
        let a = ComplexMatrix::from_real_rows(&[vec![2., 1.], vec![1., -3.]]).unwrap();
        let s = sigma_embed(&a);
        assert_eq!(s.block(0, 0, 2, 2), a);
        assert_eq!(s.block(2, 2, 2, 2), a);
        assert!(s.block(0, 2, 2, 2).is_zero(0.0));
        assert!(s.block(2, 0, 2, 2).is_zero(0.0));
    }

    #[test]
    fn from_vec_rejects_nan_and_bad_length() {
        assert!(matches!(
            ComplexMatrix::from_vec(2, 2, vec![ONE; 3]),
            Err(Error::BadShape { .. })
        ));
        let mut data = vec![ONE; 4];
        data[3] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(
            ComplexMatrix::from_vec(2, 2, data),
            Err(Error::NonFinite { row: 1, col: 1 })
        );
    }
}
