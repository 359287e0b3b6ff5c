//! Factor the 2×4 rho_b state into elementary tensor products, in both the
//! unit-matrix and the Hermitian basis.

use hermsep::decompose::{decompose_elementary_with, reconstruction_error, DimProfile, ElementaryBasis, ElementaryOptions};
use hermsep::states::rho_b;

fn main() -> hermsep::Result<()> {
    let rho = rho_b(0.3, false)?;
    let profile = DimProfile::bipartite(2, 4)?;
    for basis in [ElementaryBasis::Unit, ElementaryBasis::Hermitian] {
        for merge in [false, true] {
            let opts = ElementaryOptions { basis, merge, ..Default::default() };
            let f = decompose_elementary_with(&rho, &profile, opts)?;
            println!(
                "{basis:?} basis, merge={merge}: {} terms, reconstruction error {:.1e}",
                f.len(),
                reconstruction_error(&f, rho.matrix())
            );
        }
    }
    Ok(())
}
