//! Operator-Schmidt style factorization through the realigned real embedding:
//! a product operator collapses to one term, a Werner state to at most four.

use hermsep::decompose::{decompose_svd, decompose_svd_profile, reconstruction_error, DimProfile};
use hermsep::hermitian::HermitianOperator;
use hermsep::matrix::pauli;
use hermsep::random::{random_hermitian, rng};
use hermsep::states::werner;

fn main() -> hermsep::Result<()> {
    let x = HermitianOperator::new(pauli(1))?;
    let z = HermitianOperator::new(pauli(3))?;
    let product = x.kron(&z);
    let f = decompose_svd(&product, 2, 2)?;
    println!("σ₁⊗σ₃: {} term(s)", f.len());

    for fw in [0.0, 0.5, 1.0] {
        let w = werner(fw)?;
        let f = decompose_svd(&w, 2, 2)?;
        println!("Werner f={fw}: {} terms, error {:.1e}", f.len(), reconstruction_error(&f, w.matrix()));
    }

    let profile = DimProfile::new(vec![2, 3, 2])?;
    let a = random_hermitian(profile.total(), &mut rng(7));
    let f = decompose_svd_profile(&a, &profile)?;
    println!("random 2×3×2 operator: {} terms, error {:.1e}", f.len(), reconstruction_error(&f, a.matrix()));
    Ok(())
}
