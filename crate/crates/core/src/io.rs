//! JSON document formats for matrices, factorizations and reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::decompose::{DimProfile, TensorFactorization};
use crate::eigen::Extremes;
use crate::error::{Error, Result};
use crate::hermitian::HermitianOperator;
use crate::indicator::{AnalysisReport, Method};
use crate::matrix::ComplexMatrix;

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Real and imaginary parts as row-major nested arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixParts {
    pub re: Vec<Vec<f64>>,
    /// Missing means a real matrix.
    #[serde(default)]
    pub im: Vec<Vec<f64>>,
}

impl MatrixParts {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self { re: m.re(), im: m.im() }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.re.len();
        if let Some(row) = self.re.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "field `matrix.re`: {n} rows but a row of length {}",
                row.len()
            )));
        }
        let im_present = !self.im.is_empty();
        if im_present && (self.im.len() != n || self.im.iter().any(|r| r.len() != n)) {
            return Err(Error::InvalidArgument(format!(
                "field `matrix.im`: shape differs from `matrix.re` ({n}x{n})"
            )));
        }
        let data = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let im = if im_present { self.im[i][j] } else { 0.0 };
                num_complex::Complex64::new(self.re[i][j], im)
            })
            .collect();
        ComplexMatrix::from_vec(n, n, data)
    }
}

/// Input document: an optional profile, the matrix and free-form metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    pub matrix: MatrixParts,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl MatrixFile {
    pub fn new(a: &HermitianOperator, profile: Option<&DimProfile>) -> Self {
        Self {
            dims: profile.map(|p| p.dims().to_vec()),
            matrix: MatrixParts::from_matrix(a.matrix()),
            metadata: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("malformed matrix file: {e}")))
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// SHA-256 of the canonical serialization, as lowercase hex.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("serializable");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The Hermitian operator, checked with relative tolerance `rel_tol`.
    pub fn operator(&self, rel_tol: f64) -> Result<HermitianOperator> {
        HermitianOperator::with_tolerance(self.matrix.to_matrix()?, rel_tol)
    }

    /// `override_dims` if given, else the file's own `dims`; one is required.
    pub fn profile(&self, override_dims: Option<&DimProfile>) -> Result<DimProfile> {
        match (override_dims, &self.dims) {
            (Some(p), _) => Ok(p.clone()),
            (None, Some(d)) => DimProfile::new(d.clone()),
            (None, None) => Err(Error::InvalidArgument(
                "field `dims` missing; pass --dims".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermFile {
    pub factors: Vec<MatrixParts>,
}

/// Output of `decompose`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationFile {
    pub tool_version: String,
    pub input_digest: String,
    pub dims: Vec<usize>,
    pub method: Method,
    pub term_count: usize,
    pub reconstruction_error: f64,
    pub terms: Vec<TermFile>,
}

impl FactorizationFile {
    pub fn new(f: &TensorFactorization, method: Method, input_digest: String, reconstruction_error: f64) -> Self {
        Self {
            tool_version: TOOL_VERSION.into(),
            input_digest,
            dims: f.profile().dims().to_vec(),
            method,
            term_count: f.len(),
            reconstruction_error,
            terms: f
                .terms()
                .iter()
                .map(|t| TermFile {
                    factors: t.factors.iter().map(MatrixParts::from_matrix).collect(),
                })
                .collect(),
        }
    }

    pub fn to_factorization(&self) -> Result<TensorFactorization> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                t.factors
                    .iter()
                    .map(MatrixParts::to_matrix)
                    .collect::<Result<Vec<_>>>()
                    .map(crate::decompose::Term::new)
            })
            .collect::<Result<Vec<_>>>()?;
        TensorFactorization::new(DimProfile::new(self.dims.clone())?, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub term_count: usize,
    /// Per term, per factor `(m, M)`.
    pub factor_spectra: Vec<Vec<Extremes>>,
}

/// Output of `analyze`, and one entry per grid point of `sweep`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool_version: String,
    pub input_digest: String,
    pub dims: Vec<usize>,
    pub method: Method,
    pub report: AnalysisReport,
    pub decomposition: DecompositionSummary,
}

/// Pretty JSON with a trailing newline; field order follows the type.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
