//! Partial transposition and the positive-partial-transpose test.

use crate::decompose::DimProfile;
use crate::eigen::eigvalsh;
use crate::error::{Error, Result};
use crate::hermitian::HermitianOperator;
use crate::matrix::ComplexMatrix;

/// One-based subsystem index into a [`DimProfile`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsystemIndex(usize);

impl SubsystemIndex {
    pub fn new(which: usize, profile: &DimProfile) -> Result<Self> {
        if which == 0 || which > profile.parties() {
            return Err(Error::InvalidArgument(format!(
                "subsystem {which} outside 1..={}",
                profile.parties()
            )));
        }
        Ok(Self(which))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Transposes the indices of subsystem `sub` only.
pub fn partial_transpose(a: &HermitianOperator, profile: &DimProfile, sub: SubsystemIndex) -> Result<HermitianOperator> {
    profile.check(a.dim())?;
    let dims = profile.dims();
    let j = sub.get() - 1;
    let d = dims[j];
    // Index = (outer · d + local) · inner + rest.
    let inner: usize = dims[j + 1..].iter().product();
    let n = a.dim();
    let src = a.matrix();
    let swap = |r: usize, c: usize| {
        let (rl, cl) = ((r / inner) % d, (c / inner) % d);
        let r2 = r - rl * inner + cl * inner;
        let c2 = c - cl * inner + rl * inner;
        (r2, c2)
    };
    let out = ComplexMatrix::from_fn(n, n, |r, c| {
        let (r2, c2) = swap(r, c);
        src[(r2, c2)]
    });
    Ok(HermitianOperator::from_trusted(out))
}

/// Least eigenvalue of the partial transpose; for more than two subsystems
/// the minimum over every single-subsystem transpose (each one-vs-rest cut).
pub fn ppt_min_eig(a: &HermitianOperator, profile: &DimProfile) -> Result<f64> {
    profile.check(a.dim())?;
    let subs: Vec<usize> = if profile.parties() == 2 {
        vec![2]
    } else {
        (1..=profile.parties()).collect()
    };
    let mut best = f64::INFINITY;
    for s in subs {
        let pt = partial_transpose(a, profile, SubsystemIndex(s))?;
        best = best.min(eigvalsh(&pt)[0]);
    }
    Ok(best)
}
