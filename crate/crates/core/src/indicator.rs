//! Shift normal form, the scalar `q(A)` and its spectral bounds.
//!
//! Every factor `P` of a term is split as `P = P' + m(P)·I` with `P' >= 0`.
//! Expanding `⊗_j (P_j' + b_j I)` over subsets `S` of the shifted positions
//! gives pieces `s·(⊗_{j∈S} P_j')` with `s = Π_{j∉S} b_j`. A piece with `s < 0`
//! is repaired one factor at a time: `s·P' = (s·P' − m(s·P')I) + m(s·P')·I`,
//! the first part is PSD and the second carries the new coefficient
//! `m(s·P') = s·(M(P) − m(P))` to the remaining factors. What is left when
//! every factor of `S` has been consumed is a multiple of the identity, and the
//! sum of those multiples is `q`.
//!
//! For two and three factors the expansion collapses to closed forms in the
//! extreme eigenvalues alone ([`q_bipartite`], [`q_tripartite`]).

use serde::{Deserialize, Serialize};

use crate::decompose::{
    decompose_elementary_with, decompose_svd_profile, reconstruct, DimProfile, ElementaryOptions,
    TensorFactorization, Term,
};
use crate::eigen::{eig_extremes, Extremes};
use crate::error::{Error, Result};
use crate::hermitian::HermitianOperator;
use crate::matrix::ComplexMatrix;
use crate::ppt::ppt_min_eig;

/// Eigenvalues in `[-SIGN_TOL, 0)` are classified as non-negative.
pub const SIGN_TOL: f64 = 1e-12;
/// `q` at or above `-VERDICT_TOL` counts as non-negative; a PPT violation needs
/// an eigenvalue below `-VERDICT_TOL`.
pub const VERDICT_TOL: f64 = 1e-10;
/// Trace tolerance for density-matrix checks.
pub const TRACE_TOL: f64 = 1e-10;

fn nonneg(x: f64) -> bool {
    x >= -SIGN_TOL
}

fn neg_part(x: f64) -> f64 {
    if nonneg(x) {
        0.0
    } else {
        x
    }
}

/// Per-term, per-factor extreme eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    terms: Vec<Vec<Extremes>>,
}

impl SpectrumSummary {
    pub fn new(terms: Vec<Vec<Extremes>>) -> Result<Self> {
        let k = terms.first().map_or(0, Vec::len);
        for (t, row) in terms.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Arity {
                    term: t,
                    expected: k,
                    found: row.len(),
                });
            }
            if let Some(e) = row.iter().find(|e| e.min.is_nan() || e.max.is_nan() || e.min > e.max) {
                return Err(Error::InvalidArgument(format!(
                    "term {t}: least eigenvalue {} exceeds greatest {}",
                    e.min, e.max
                )));
            }
        }
        Ok(Self { terms })
    }

    /// Eigensolves every factor; errors on a non-Hermitian factor.
    pub fn from_factorization(f: &TensorFactorization) -> Result<Self> {
        let terms = f
            .hermitian_factors()?
            .iter()
            .map(|fs| fs.iter().map(eig_extremes).collect())
            .collect();
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[Vec<Extremes>] {
        &self.terms
    }

    /// Factors per term; zero for an empty summary.
    pub fn parties(&self) -> usize {
        self.terms.first().map_or(0, Vec::len)
    }

    fn require(&self, k: usize) -> Result<()> {
        match self.terms.iter().position(|t| t.len() != k) {
            Some(t) => Err(Error::Arity {
                term: t,
                expected: k,
                found: self.terms[t].len(),
            }),
            None => Ok(()),
        }
    }
}

/// `A = reconstruct(base) + q·I` with every factor of `base` PSD.
#[derive(Clone, Debug)]
pub struct ShiftedForm {
    pub base: TensorFactorization,
    pub q: f64,
}

impl ShiftedForm {
    pub fn profile(&self) -> &DimProfile {
        self.base.profile()
    }

    pub fn reconstruct_matrix(&self) -> ComplexMatrix {
        let mut m = self.base.reconstruct_matrix();
        for i in 0..m.rows() {
            m[(i, i)].re += self.q;
        }
        m
    }
}

/// Minimal eigenvalue of `s·P'` where `P'` has spectrum in `[0, spread]`.
fn min_scaled_shifted(s: f64, spread: f64) -> f64 {
    if s >= 0.0 {
        0.0
    } else {
        s * spread
    }
}

/// One repaired piece: the position whose factor is `s·P' − m(s·P')I`, the
/// coefficient `s`, and the positions still carrying bare `P'` factors.
struct Piece {
    at: usize,
    coeff: f64,
    later: Vec<usize>,
    greatest: f64,
}

/// Walks the subset expansion of one term. Returns the pieces and the scalar
/// contribution to `q`.
fn expand_term(ext: &[Extremes]) -> (Vec<Piece>, f64) {
    let k = ext.len();
    let spreads: Vec<f64> = ext.iter().map(Extremes::spread).collect();
    let mut pieces = Vec::new();
    let mut q: f64 = ext.iter().map(|e| e.min).product();
    for mask in 1u64..(1u64 << k) {
        let members: Vec<usize> = (0..k).filter(|j| mask & (1 << j) != 0).collect();
        let mut s: f64 = (0..k).filter(|j| mask & (1 << j) == 0).map(|j| ext[j].min).product();
        for (idx, &j) in members.iter().enumerate() {
            let later = members[idx + 1..].to_vec();
            let rest: f64 = later.iter().map(|&l| spreads[l]).product();
            let greatest = s.abs() * spreads[j] * rest;
            if greatest > 0.0 {
                pieces.push(Piece {
                    at: j,
                    coeff: s,
                    later,
                    greatest,
                });
            }
            s = min_scaled_shifted(s, spreads[j]);
        }
        q += s;
    }
    (pieces, q)
}

/// Shift normal form of `f` (factors must be Hermitian).
///
/// Pieces are emitted term by term, subsets in increasing bitmask order and,
/// within a subset, factor positions left to right. Positions outside the
/// piece carry explicit identities.
pub fn shift_normal_form(f: &TensorFactorization) -> Result<ShiftedForm> {
    let factors = f.hermitian_factors()?;
    let profile = f.profile().clone();
    let mut terms = Vec::new();
    let mut q = 0.0;
    for fs in &factors {
        let ext: Vec<Extremes> = fs.iter().map(eig_extremes).collect();
        let shifted: Vec<ComplexMatrix> = fs
            .iter()
            .zip(&ext)
            .map(|(p, e)| p.shift(e.min).into_matrix())
            .collect();
        let (pieces, scalar) = expand_term(&ext);
        q += scalar;
        for piece in pieces {
            let factors = (0..fs.len())
                .map(|j| {
                    if j == piece.at {
                        let mut m = shifted[j].scale_real(piece.coeff);
                        let shift = min_scaled_shifted(piece.coeff, ext[j].spread());
                        for i in 0..m.rows() {
                            m[(i, i)].re -= shift;
                        }
                        m
                    } else if piece.later.contains(&j) {
                        shifted[j].clone()
                    } else {
                        ComplexMatrix::identity(profile.dims()[j])
                    }
                })
                .collect();
            terms.push(Term::new(factors));
        }
    }
    Ok(ShiftedForm {
        base: TensorFactorization::new(profile, terms)?,
        q,
    })
}

/// `q` and `Σ M(piece)` of the shift normal form, from spectra alone.
pub fn shift_scalars(spectra: &SpectrumSummary) -> (f64, f64) {
    spectra.terms().iter().fold((0.0, 0.0), |(q, g), ext| {
        let (pieces, s) = expand_term(ext);
        (q + s, g + pieces.iter().map(|p| p.greatest).sum::<f64>())
    })
}

/// `q` for two factors per term: `m_B·m_C` when both are non-negative,
/// `m_B·M_C` or `M_B·m_C` when exactly one is negative, and
/// `m_C·M_B + m_B·M_C − m_B·m_C` when both are.
pub fn q_bipartite(spectra: &SpectrumSummary) -> Result<f64> {
    spectra.require(2)?;
    Ok(spectra
        .terms()
        .iter()
        .map(|t| {
            let (b, c) = (t[0], t[1]);
            match (nonneg(b.min), nonneg(c.min)) {
                (true, true) => b.min * c.min,
                (false, true) => b.min * c.max,
                (true, false) => b.max * c.min,
                (false, false) => c.min * b.max + b.min * c.max - b.min * c.min,
            }
        })
        .sum())
}

/// `q` for three factors per term, by the sign pattern of
/// `(m_B, m_C, m_D) = (b, c, d)`.
pub fn q_tripartite(spectra: &SpectrumSummary) -> Result<f64> {
    spectra.require(3)?;
    Ok(spectra
        .terms()
        .iter()
        .map(|t| {
            let (b, c, d) = (t[0].min, t[1].min, t[2].min);
            let (mb, mc, md) = (t[0].max, t[1].max, t[2].max);
            match (nonneg(b), nonneg(c), nonneg(d)) {
                (true, true, true) => b * c * d,
                (false, true, true) => b * mc * md,
                (true, false, true) => c * mb * md,
                (true, true, false) => d * mb * mc,
                (false, false, true) => md * (b * mc + c * mb - 2.0 * b * c) + b * c * d,
                (false, true, false) => mc * (b * md + d * mb - 2.0 * b * d) + b * c * d,
                (true, false, false) => mb * (c * md + d * mc - 2.0 * c * d) + b * c * d,
                (false, false, false) => {
                    b * mc * md + c * mb * md + d * mb * mc - 2.0 * (c * d * mb + b * d * mc + b * c * md)
                        + 4.0 * b * c * d
                }
            }
        })
        .sum())
}

/// Closed form for any number of factors:
/// `Σ_terms [Π_j m_j + Σ_{S≠∅} min(Π_{j∉S} m_j, 0) · Π_{j∈S} (M_j − m_j)]`.
pub fn q_closed_form(spectra: &SpectrumSummary) -> f64 {
    spectra
        .terms()
        .iter()
        .map(|t| {
            let k = t.len();
            let mut q: f64 = t.iter().map(|e| e.min).product();
            for mask in 1u64..(1u64 << k) {
                let outside: f64 = (0..k).filter(|j| mask & (1 << j) == 0).map(|j| t[j].min).product();
                let inside: f64 = (0..k).filter(|j| mask & (1 << j) != 0).map(|j| t[j].spread()).product();
                q += neg_part(outside) * inside;
            }
            q
        })
        .sum()
}

/// `Σ_i Π_j m(B_i^j)`; every factor must be PSD.
pub fn q_multipartite_nonneg(spectra: &SpectrumSummary) -> Result<f64> {
    for (t, row) in spectra.terms().iter().enumerate() {
        if let Some((j, e)) = row.iter().enumerate().find(|(_, e)| !nonneg(e.min)) {
            return Err(Error::NegativeFactor {
                term: t,
                factor: j,
                min: e.min,
            });
        }
    }
    Ok(spectra
        .terms()
        .iter()
        .map(|t| t.iter().map(|e| e.min).product::<f64>())
        .sum())
}

/// `M(A) − Σ_i [ΔB·ΔC + |m_C|·ΔB + |m_B|·ΔC]`, with `Δ = M − m`.
pub fn lower_bound_bipartite(spectra: &SpectrumSummary, max_a: f64) -> Result<f64> {
    spectra.require(2)?;
    let sum: f64 = spectra
        .terms()
        .iter()
        .map(|t| {
            let (b, c) = (t[0], t[1]);
            b.spread() * c.spread() + c.min.abs() * b.spread() + b.min.abs() * c.spread()
        })
        .sum();
    Ok(max_a - sum)
}

/// The bipartite bound with each term resolved by the signs of `m_B`, `m_C`.
pub fn lower_bound_bipartite_signed(spectra: &SpectrumSummary, max_a: f64) -> Result<f64> {
    spectra.require(2)?;
    let sum: f64 = spectra
        .terms()
        .iter()
        .map(|t| {
            let (b, bm, c, cm) = (t[0].min, t[0].max, t[1].min, t[1].max);
            match (nonneg(b), nonneg(c)) {
                (true, true) => bm * cm - b * c,
                (false, true) => (bm - 2.0 * b) * cm + b * c,
                (true, false) => bm * (cm - 2.0 * c) + b * c,
                (false, false) => (bm - 2.0 * b) * (cm - 2.0 * c) - b * c,
            }
        })
        .sum();
    Ok(max_a - sum)
}

/// `M(A) − Σ_i [M_B·M_C − m_B·m_C]`; every factor must be PSD.
pub fn lower_bound_bipartite_psd(spectra: &SpectrumSummary, max_a: f64) -> Result<f64> {
    spectra.require(2)?;
    q_multipartite_nonneg(spectra)?;
    Ok(max_a
        - spectra
            .terms()
            .iter()
            .map(|t| t[0].max * t[1].max - t[0].min * t[1].min)
            .sum::<f64>())
}

/// Three-factor bound: `M(A)` minus, per term,
/// `ΔBΔCΔD + (|d| + |d⁻|)ΔBΔC + (|b| + |b⁻|)ΔCΔD + (|c| + |c⁻|)ΔBΔD
///  + |cd|ΔB + |bd|ΔC + |bc|ΔD`, where `x⁻ = min(x, 0)`.
pub fn lower_bound_tripartite(spectra: &SpectrumSummary, max_a: f64) -> Result<f64> {
    spectra.require(3)?;
    let sum: f64 = spectra
        .terms()
        .iter()
        .map(|t| {
            let (b, c, d) = (t[0].min, t[1].min, t[2].min);
            let (db, dc, dd) = (t[0].spread(), t[1].spread(), t[2].spread());
            let w = |x: f64| x.abs() + neg_part(x).abs();
            db * dc * dd
                + w(d) * db * dc
                + w(b) * dc * dd
                + w(c) * db * dd
                + (c * d).abs() * db
                + (b * d).abs() * dc
                + (b * c).abs() * dd
        })
        .sum();
    Ok(max_a - sum)
}

/// `M(A) − Σ_i [M_B·M_C·M_D − m_B·m_C·m_D]`; every factor must be PSD.
pub fn lower_bound_tripartite_psd(spectra: &SpectrumSummary, max_a: f64) -> Result<f64> {
    spectra.require(3)?;
    q_multipartite_nonneg(spectra)?;
    Ok(max_a
        - spectra
            .terms()
            .iter()
            .map(|t| t[0].max * t[1].max * t[2].max - t[0].min * t[1].min * t[2].min)
            .sum::<f64>())
}

/// `M(A) − Σ M(piece)` over the pieces of the shift normal form; valid for
/// any number of factors.
pub fn lower_bound_procedural(spectra: &SpectrumSummary, max_a: f64) -> f64 {
    max_a - shift_scalars(spectra).1
}

/// `m(A)`: no factorization of `A` yields a larger `q`.
pub fn upper_bound(a: &HermitianOperator) -> f64 {
    eig_extremes(a).min
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Elementary,
    Svd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Separable,
    Entangled,
    Inconclusive,
}

/// Which rule produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictBasis {
    /// Partial transpose has a negative eigenvalue.
    PptViolation,
    /// `q >= 0` for the computed factorization.
    IndicatorNonnegative,
    /// PPT on a 2x2 or 2x3 system, where PPT is also sufficient.
    PptSufficientLowDim,
    /// No rule applies.
    Undecided,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AnalyzeOptions {
    pub method: Method,
    pub elementary: ElementaryOptions,
    /// Skip density-matrix checks and suppress the verdict.
    pub hermitian_only: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub q: f64,
    pub lower_bound: f64,
    pub upper_bound_m_a: f64,
    pub max_a: f64,
    pub ppt_min_eig: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict_basis: Option<VerdictBasis>,
    pub terms: usize,
}

/// Three-way verdict from `q` and the PPT minimum eigenvalue.
///
/// A PPT violation is checked first, so a verdict can never be `Separable`
/// while the partial transpose is (numerically) indefinite.
pub fn verdict(q: f64, ppt_min: f64, profile: &DimProfile) -> (Verdict, VerdictBasis) {
    if ppt_min < -VERDICT_TOL {
        return (Verdict::Entangled, VerdictBasis::PptViolation);
    }
    if q >= -VERDICT_TOL {
        return (Verdict::Separable, VerdictBasis::IndicatorNonnegative);
    }
    if matches!(profile.dims(), [2, 2] | [2, 3] | [3, 2]) {
        return (Verdict::Separable, VerdictBasis::PptSufficientLowDim);
    }
    (Verdict::Inconclusive, VerdictBasis::Undecided)
}

/// Unit trace within [`TRACE_TOL`] and PSD within the default tolerance.
pub fn check_density(a: &HermitianOperator) -> Result<()> {
    let tr = a.trace();
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::NotDensityMatrix(format!("trace {tr} differs from 1")));
    }
    let m = eig_extremes(a).min;
    if m < -a.default_psd_tolerance() {
        return Err(Error::NotDensityMatrix(format!("least eigenvalue {m} is negative")));
    }
    Ok(())
}

/// Factorization used by [`analyze`].
pub fn factorize(a: &HermitianOperator, profile: &DimProfile, opts: &AnalyzeOptions) -> Result<TensorFactorization> {
    match opts.method {
        Method::Elementary => decompose_elementary_with(a, profile, opts.elementary),
        Method::Svd => decompose_svd_profile(a, profile),
    }
}

/// Lower bound for `f` given `M(A)`: the closed two- or three-factor form,
/// otherwise the procedural bound.
pub fn lower_bound(spectra: &SpectrumSummary, max_a: f64) -> f64 {
    match spectra.parties() {
        2 => lower_bound_bipartite(spectra, max_a).expect("arity checked"),
        3 => lower_bound_tripartite(spectra, max_a).expect("arity checked"),
        _ => lower_bound_procedural(spectra, max_a),
    }
}

/// `q` via the closed form for two or three factors, otherwise procedurally.
pub fn indicator_q(spectra: &SpectrumSummary) -> f64 {
    match spectra.parties() {
        2 => q_bipartite(spectra).expect("arity checked"),
        3 => q_tripartite(spectra).expect("arity checked"),
        _ => shift_scalars(spectra).0,
    }
}

pub fn analyze(a: &HermitianOperator, profile: &DimProfile, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    profile.check(a.dim())?;
    if !opts.hermitian_only {
        check_density(a)?;
    }
    let f = factorize(a, profile, opts)?;
    analyze_factorization(&f, opts.hermitian_only)
}

/// Report for a given Hermitian-factor factorization; bounds use the
/// spectrum of the reconstructed operator.
pub fn analyze_factorization(f: &TensorFactorization, hermitian_only: bool) -> Result<AnalysisReport> {
    let spectra = SpectrumSummary::from_factorization(f)?;
    let a = reconstruct(f)?;
    let ext = eig_extremes(&a);
    let q = indicator_q(&spectra);
    let ppt = ppt_min_eig(&a, f.profile())?;
    let (verdict, basis) = if hermitian_only {
        (None, None)
    } else {
        let (v, b) = verdict(q, ppt, f.profile());
        (Some(v), Some(b))
    };
    Ok(AnalysisReport {
        q,
        lower_bound: lower_bound(&spectra, ext.max),
        upper_bound_m_a: ext.min,
        max_a: ext.max,
        ppt_min_eig: ppt,
        verdict,
        verdict_basis: basis,
        terms: f.len(),
    })
}
