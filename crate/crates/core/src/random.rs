//! Seeded generators for operators, states and factorizations.
//!
//! Every generator is a pure function of its arguments and an explicit seed
//! (ChaCha8), so test corpora and CLI outputs are reproducible bit for bit.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::decompose::{DimProfile, TensorFactorization, Term};
use crate::error::{Error, Result};
use crate::hermitian::HermitianOperator;
use crate::matrix::{kron_all, ComplexMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `(X + X†)/2` with i.i.d. complex Gaussian `X`.
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> HermitianOperator {
    let x = ComplexMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    HermitianOperator::from_trusted((&x + &x.adjoint()).scale_real(0.5))
}

/// `rank` orthonormal columns from Gram–Schmidt on Gaussian vectors.
fn orthonormal_columns(dim: usize, rank: usize, rng: &mut impl Rng) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(rank);
    while cols.len() < rank {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        // Two passes keep orthogonality at machine precision.
        for _ in 0..2 {
            for c in &cols {
                let p: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= p * y;
                }
            }
        }
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    cols
}

fn density_from(cols: &[Vec<Complex64>], weights: &[f64]) -> HermitianOperator {
    let dim = cols.first().map_or(0, Vec::len);
    let mut m = ComplexMatrix::from_fn(dim, dim, |i, j| {
        cols.iter()
            .zip(weights)
            .map(|(c, w)| c[i] * c[j].conj() * *w)
            .sum()
    });
    // Exact Hermiticity: mirror the upper triangle.
    for i in 0..dim {
        m[(i, i)].im = 0.0;
        for j in (i + 1)..dim {
            m[(j, i)] = m[(i, j)].conj();
        }
    }
    HermitianOperator::from_trusted(m)
}

fn check_rank(dim: usize, rank: usize) -> Result<()> {
    if rank == 0 || rank > dim {
        return Err(Error::InvalidArgument(format!("rank {rank} outside 1..={dim}")));
    }
    Ok(())
}

/// Density matrix of the given rank with random eigenvectors and random
/// (uniform, normalized) nonzero eigenvalues.
pub fn random_density_with(dim: usize, rank: usize, rng: &mut impl Rng) -> Result<HermitianOperator> {
    check_rank(dim, rank)?;
    let cols = orthonormal_columns(dim, rank, rng);
    let raw: Vec<f64> = (0..rank).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    Ok(density_from(&cols, &weights))
}

pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<HermitianOperator> {
    random_density_with(dim, rank, &mut rng(seed))
}

/// As [`random_density`] but with all nonzero eigenvalues equal to `1/rank`.
pub fn random_density_equal_weights(dim: usize, rank: usize, seed: u64) -> Result<HermitianOperator> {
    check_rank(dim, rank)?;
    let mut r = rng(seed);
    let cols = orthonormal_columns(dim, rank, &mut r);
    Ok(density_from(&cols, &vec![1.0 / rank as f64; rank]))
}

/// `ρ = Σ_i p_i ρ_i¹ ⊗ … ⊗ ρ_iᵏ` and its witness factorization; the weight
/// `p_i` is folded into the first factor.
pub fn random_separable_with(
    profile: &DimProfile,
    terms: usize,
    rng: &mut impl Rng,
) -> Result<(HermitianOperator, TensorFactorization)> {
    if terms == 0 {
        return Err(Error::InvalidArgument("need at least one term".into()));
    }
    let raw: Vec<f64> = (0..terms).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut out = Vec::with_capacity(terms);
    for w in raw {
        let mut factors = Vec::with_capacity(profile.parties());
        for &d in profile.dims() {
            let rank = rng.random_range(1..=d);
            factors.push(random_density_with(d, rank, rng)?.into_matrix());
        }
        factors[0] = factors[0].scale_real(w / total);
        out.push(Term::new(factors));
    }
    let f = TensorFactorization::new(profile.clone(), out)?;
    let n = profile.total();
    let mut m = f
        .terms()
        .iter()
        .fold(ComplexMatrix::zeros(n, n), |acc, t| &acc + &kron_all(&t.factors).unwrap());
    for i in 0..n {
        m[(i, i)].im = 0.0;
        for j in (i + 1)..n {
            m[(j, i)] = m[(i, j)].conj();
        }
    }
    Ok((HermitianOperator::from_trusted(m), f))
}

pub fn random_separable(profile: &DimProfile, terms: usize, seed: u64) -> Result<(HermitianOperator, TensorFactorization)> {
    random_separable_with(profile, terms, &mut rng(seed))
}

/// Factorization with independent random Hermitian factors.
pub fn random_factorization_with(profile: &DimProfile, terms: usize, rng: &mut impl Rng) -> TensorFactorization {
    let terms = (0..terms)
        .map(|_| {
            Term::new(
                profile
                    .dims()
                    .iter()
                    .map(|&d| random_hermitian(d, rng).into_matrix())
                    .collect(),
            )
        })
        .collect();
    TensorFactorization::new(profile.clone(), terms).expect("shapes follow the profile")
}

/// Factorization whose factors are all PSD (random densities scaled by a
/// positive factor).
pub fn random_psd_factorization_with(profile: &DimProfile, terms: usize, rng: &mut impl Rng) -> TensorFactorization {
    let terms = (0..terms)
        .map(|_| {
            Term::new(
                profile
                    .dims()
                    .iter()
                    .map(|&d| {
                        let rank = rng.random_range(1..=d);
                        let scale = rng.random_range(0.1..3.0);
                        random_density_with(d, rank, rng).expect("rank in range").into_matrix().scale_real(scale)
                    })
                    .collect(),
            )
        })
        .collect();
    TensorFactorization::new(profile.clone(), terms).expect("shapes follow the profile")
}
