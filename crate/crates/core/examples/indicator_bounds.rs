//! The separability indicator q and its bounds for product operators
//! built from Pauli matrices, alongside the shifted normal form it comes from.

use hermsep::decompose::{reconstruct, DimProfile, TensorFactorization, Term};
use hermsep::eigen::eig_extremes;
use hermsep::indicator::{indicator_q, lower_bound, shift_normal_form, upper_bound, SpectrumSummary};
use hermsep::matrix::pauli;

fn report(label: &str, factors: Vec<hermsep::matrix::ComplexMatrix>) -> hermsep::Result<()> {
    let profile = DimProfile::new(factors.iter().map(|f| f.rows()).collect())?;
    let f = TensorFactorization::new(profile, vec![Term::new(factors)])?;
    let a = reconstruct(&f)?;
    let s = SpectrumSummary::from_factorization(&f)?;
    let shifted = shift_normal_form(&f)?;
    println!(
        "{label}: q = {}, lower bound = {}, m(A) = {}, shifted pieces = {}",
        indicator_q(&s),
        lower_bound(&s, eig_extremes(&a).max),
        upper_bound(&a),
        shifted.base.len()
    );
    Ok(())
}

fn main() -> hermsep::Result<()> {
    report("σ₃⊗σ₃", vec![pauli(3), pauli(3)])?;
    report("σ₃⊗σ₃⊗σ₃", vec![pauli(3), pauli(3), pauli(3)])?;
    report("σ₁⊗σ₂⊗σ₃", vec![pauli(1), pauli(2), pauli(3)])?;
    Ok(())
}
