//! Reference states and hand-written factorizations of them.

use std::collections::BTreeMap;
use std::fmt;

use crate::decompose::{DimProfile, TensorFactorization, Term};
use crate::error::{Error, Result};
use crate::hermitian::HermitianOperator;
use crate::matrix::{ComplexMatrix, I};

fn check_unit_interval(name: &'static str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::OutOfDomain {
            name,
            value: v,
            domain: "[0, 1]",
        });
    }
    Ok(())
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::OutOfDomain {
            name,
            value: v,
            domain: "(0, inf)",
        });
    }
    Ok(())
}

fn real(rows: Vec<Vec<f64>>) -> HermitianOperator {
    HermitianOperator::from_real_rows(&rows).expect("symmetric by construction")
}

/// Two-qubit Werner state with singlet weight `f ∈ [0, 1]`.
pub fn werner(f: f64) -> Result<HermitianOperator> {
    check_unit_interval("f", f)?;
    let (d, c, o) = ((1.0 - f) / 3.0, (1.0 + 2.0 * f) / 6.0, (1.0 - 4.0 * f) / 6.0);
    Ok(real(vec![
        vec![d, 0., 0., 0.],
        vec![0., c, o, 0.],
        vec![0., o, c, 0.],
        vec![0., 0., 0., d],
    ]))
}

/// The 2 x 4 bound-entangled family `ρ_b`, `b ∈ [0, 1]`; trace `1 + 7b`
/// unless `normalized`.
pub fn rho_b(b: f64, normalized: bool) -> Result<HermitianOperator> {
    check_unit_interval("b", b)?;
    let h = (1.0 + b) / 2.0;
    let r = (1.0 - b * b).sqrt() / 2.0;
    let m = real(vec![
        vec![b, 0., 0., 0., 0., b, 0., 0.],
        vec![0., b, 0., 0., 0., 0., b, 0.],
        vec![0., 0., b, 0., 0., 0., 0., b],
        vec![0., 0., 0., b, 0., 0., 0., 0.],
        vec![0., 0., 0., 0., h, 0., 0., r],
        vec![b, 0., 0., 0., 0., b, 0., 0.],
        vec![0., b, 0., 0., 0., 0., b, 0.],
        vec![0., 0., b, 0., r, 0., 0., h],
    ]);
    Ok(if normalized { m.scale(1.0 / (1.0 + 7.0 * b)) } else { m })
}

/// Three-qubit operator `diag(1, a, b, c, 1/a, 1/b, 1/c, 1)` plus ones at the
/// corners `(1, 8)`, `(8, 1)`; PSD for positive parameters.
pub fn corner_state(a: f64, b: f64, c: f64) -> Result<HermitianOperator> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_positive("c", c)?;
    let diag = [1.0, a, b, c, 1.0 / a, 1.0 / b, 1.0 / c, 1.0];
    let mut rows: Vec<Vec<f64>> = (0..8)
        .map(|i| (0..8).map(|j| if i == j { diag[i] } else { 0.0 }).collect())
        .collect();
    rows[0][7] = 1.0;
    rows[7][0] = 1.0;
    Ok(real(rows))
}

/// `I / total` on the given profile.
pub fn maximally_mixed(profile: &DimProfile) -> HermitianOperator {
    let n = profile.total();
    HermitianOperator::identity(n).scale(1.0 / n as f64)
}

fn e(n: usize, i: usize, j: usize) -> ComplexMatrix {
    ComplexMatrix::unit(n, i - 1, j - 1)
}

/// `S_12 = E_12 + E_21` on C².
fn s12() -> ComplexMatrix {
    &e(2, 1, 2) + &e(2, 2, 1)
}

/// `i·A_12 = i(E_12 − E_21)` on C².
fn ia12() -> ComplexMatrix {
    (&e(2, 1, 2) - &e(2, 2, 1)).scale(I)
}

fn term(fs: Vec<ComplexMatrix>) -> Term {
    Term::new(fs)
}

type UnitIndex = (usize, usize);

/// Sixteen unit-matrix terms `E_kl ⊗ c·E_i'j'` whose sum is the unnormalized
/// [`rho_b`]. Factors are unit matrices and therefore not all Hermitian.
pub fn rho_b_factorization(b: f64) -> Result<TensorFactorization> {
    check_unit_interval("b", b)?;
    let h = (1.0 + b) / 2.0;
    let r = (1.0 - b * b).sqrt() / 2.0;
    // ((k, l), (i', j'), coefficient), 1-based.
    let list: [(UnitIndex, UnitIndex, f64); 16] = [
        ((1, 1), (1, 1), b),
        ((1, 2), (1, 2), b),
        ((1, 1), (2, 2), b),
        ((1, 2), (2, 3), b),
        ((1, 1), (3, 3), b),
        ((1, 2), (3, 4), b),
        ((1, 1), (4, 4), b),
        ((2, 1), (2, 1), b),
        ((2, 2), (2, 2), b),
        ((2, 1), (3, 2), b),
        ((2, 2), (3, 3), b),
        ((2, 1), (4, 3), b),
        ((2, 2), (1, 1), h),
        ((2, 2), (4, 4), h),
        ((2, 2), (1, 4), r),
        ((2, 2), (4, 1), r),
    ];
    let terms = list
        .iter()
        .map(|&((k, l), (i, j), c)| term(vec![e(2, k, l), e(4, i, j).scale_real(c)]))
        .collect();
    TensorFactorization::new(DimProfile::bipartite(2, 4)?, terms)
}

/// Six Hermitian product terms summing to [`werner`]`(f)`; the off-diagonal
/// pair uses `S_12 ⊗ S_21 − i·A_12 ⊗ i·A_21`.
pub fn werner_factorization(f: f64) -> Result<TensorFactorization> {
    check_unit_interval("f", f)?;
    let (d, c, o) = ((1.0 - f) / 3.0, (1.0 + 2.0 * f) / 6.0, (1.0 - 4.0 * f) / 12.0);
    let ia21 = ia12().scale_real(-1.0);
    let terms = vec![
        term(vec![e(2, 1, 1), e(2, 1, 1).scale_real(d)]),
        term(vec![e(2, 1, 1), e(2, 2, 2).scale_real(c)]),
        term(vec![e(2, 2, 2), e(2, 1, 1).scale_real(c)]),
        term(vec![s12(), s12().scale_real(o)]),
        term(vec![ia12(), ia21.scale_real(-o)]),
        term(vec![e(2, 2, 2), e(2, 2, 2).scale_real(d)]),
    ];
    TensorFactorization::new(DimProfile::bipartite(2, 2)?, terms)
}

/// Hermitian three-factor terms summing to [`corner_state`]`(a, b, c)`.
///
/// The corner `E_18 + E_81` is written as
/// `¼ S ⊗ (S ⊗ S − iA ⊗ iA) − ¼ iA ⊗ (S ⊗ iA + iA ⊗ S)` with `S = S_12`,
/// `iA = i·A_12`.
pub fn corner_state_factorization(a: f64, b: f64, c: f64) -> Result<TensorFactorization> {
    corner_state(a, b, c)?;
    let (e11, e22) = (e(2, 1, 1), e(2, 2, 2));
    let (s, ia) = (s12(), ia12());
    let q = 0.25;
    let terms = vec![
        term(vec![e11.clone(), e11.clone(), e11.clone()]),
        term(vec![e22.clone(), e22.clone(), e22.clone()]),
        term(vec![s.clone(), s.clone(), s.scale_real(q)]),
        term(vec![s.clone(), ia.clone(), ia.scale_real(-q)]),
        term(vec![ia.clone(), s.clone(), ia.scale_real(-q)]),
        term(vec![ia.clone(), ia.clone(), s.scale_real(-q)]),
        term(vec![e11.clone(), e11.clone(), e22.scale_real(a)]),
        term(vec![e11.clone(), e22.clone(), e11.scale_real(b)]),
        term(vec![e11.clone(), e22.clone(), e22.scale_real(c)]),
        term(vec![e22.clone(), e11.clone(), e11.scale_real(1.0 / a)]),
        term(vec![e22.clone(), e11.clone(), e22.scale_real(1.0 / b)]),
        term(vec![e22.clone(), e22.clone(), e11.scale_real(1.0 / c)]),
    ];
    TensorFactorization::new(DimProfile::new(vec![2, 2, 2])?, terms)
}

/// A named state and its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Werner { f: f64 },
    RhoB { b: f64, normalized: bool },
    Corner { a: f64, b: f64, c: f64 },
    MaximallyMixed { profile: DimProfile },
    Custom { profile: DimProfile, matrix: HermitianOperator },
}

impl StateSpec {
    /// Builds a spec from a state name and a map of named parameters.
    pub fn from_params(name: &str, params: &BTreeMap<String, f64>, profile: Option<DimProfile>) -> Result<Self> {
        let get = |key: &str| {
            params
                .get(key)
                .copied()
                .ok_or_else(|| Error::InvalidArgument(format!("state `{name}` needs parameter `{key}`")))
        };
        Ok(match name {
            "werner" => Self::Werner { f: get("f")? },
            "rho-b" => Self::RhoB {
                b: get("b")?,
                normalized: params.get("normalized").is_some_and(|v| *v != 0.0),
            },
            "corner" | "example3" => Self::Corner {
                a: get("a")?,
                b: get("b")?,
                c: get("c")?,
            },
            "maximally-mixed" => Self::MaximallyMixed {
                profile: profile.unwrap_or(DimProfile::bipartite(2, 2)?),
            },
            other => return Err(Error::InvalidArgument(format!("unknown state `{other}`"))),
        })
    }

    pub fn profile(&self) -> DimProfile {
        match self {
            Self::Werner { .. } => DimProfile::bipartite(2, 2).unwrap(),
            Self::RhoB { .. } => DimProfile::bipartite(2, 4).unwrap(),
            Self::Corner { .. } => DimProfile::new(vec![2, 2, 2]).unwrap(),
            Self::MaximallyMixed { profile } | Self::Custom { profile, .. } => profile.clone(),
        }
    }

    pub fn build(&self) -> Result<HermitianOperator> {
        match self {
            Self::Werner { f } => werner(*f),
            Self::RhoB { b, normalized } => rho_b(*b, *normalized),
            Self::Corner { a, b, c } => corner_state(*a, *b, *c),
            Self::MaximallyMixed { profile } => Ok(maximally_mixed(profile)),
            Self::Custom { profile, matrix } => {
                profile.check(matrix.dim())?;
                Ok(matrix.clone())
            }
        }
    }

    /// Named parameters, for metadata.
    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        match self {
            Self::Werner { f } => {
                m.insert("f".into(), *f);
            }
            Self::RhoB { b, normalized } => {
                m.insert("b".into(), *b);
                m.insert("normalized".into(), f64::from(u8::from(*normalized)));
            }
            Self::Corner { a, b, c } => {
                m.insert("a".into(), *a);
                m.insert("b".into(), *b);
                m.insert("c".into(), *c);
            }
            Self::MaximallyMixed { .. } | Self::Custom { .. } => {}
        }
        m
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Werner { .. } => "werner",
            Self::RhoB { .. } => "rho-b",
            Self::Corner { .. } => "corner",
            Self::MaximallyMixed { .. } => "maximally-mixed",
            Self::Custom { .. } => "custom",
        };
        f.write_str(name)
    }
}
