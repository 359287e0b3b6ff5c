//! Command-line front end. `main.rs` only forwards to [`run`].
//!
//! Exit codes: 0 success, 2 malformed input or arguments, 3 Hermiticity or
//! density-matrix violation, 4 reconstruction failure, 1 I/O failure.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::decompose::{
    decompose_svd_profile, decompose_svd_with, reconstruction_error, DimProfile, ElementaryBasis,
    ElementaryOptions, SvdBlocks, TensorFactorization,
};
use crate::error::Error;
use crate::hermitian::{HermitianOperator, HERMITICITY_REL_TOL};
use crate::indicator::{analyze_factorization, check_density, factorize, AnalyzeOptions, Method, SpectrumSummary, Verdict};
use crate::io::{to_json, DecompositionSummary, FactorizationFile, MatrixFile, ReportFile, TOOL_VERSION};
use crate::random::{random_density, random_separable};
use crate::states::StateSpec;

#[derive(Debug, Parser)]
#[command(name = "hermsep", version, about = "Tensor decompositions and separability indicators for density matrices")]
pub struct Cli {
    /// Relative Hermiticity tolerance for input matrices.
    #[arg(long, global = true, default_value_t = HERMITICITY_REL_TOL)]
    pub tol: f64,
    /// Seed for generated random states.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout when omitted).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Accept any Hermitian operator and omit the verdict.
    #[arg(long, global = true)]
    pub hermitian_only: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor a matrix into a sum of tensor products.
    Decompose(DecomposeArgs),
    /// Indicator, bounds, PPT test and verdict for a matrix.
    Analyze(AnalyzeArgs),
    /// Write a reference or random state as a matrix file.
    Gen(GenArgs),
    /// Analyze a state over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Elementary,
    Svd,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Elementary => Method::Elementary,
            MethodArg::Svd => Method::Svd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    /// Hermitian basis; every factor Hermitian.
    Hermitian,
    /// Unit matrices E_ij; factors generally not Hermitian.
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BlocksArg {
    LowerRight,
    Full,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub input: PathBuf,
    /// Subsystem dimensions, e.g. `2,4`; overrides the file's `dims`.
    #[arg(long, value_parser = parse_dims)]
    pub dims: Option<DimProfile>,
    #[arg(long, value_enum, default_value_t = MethodArg::Elementary)]
    pub method: MethodArg,
    /// Merge terms that share all leading factors.
    #[arg(long)]
    pub merge: bool,
    #[arg(long, value_enum, default_value_t = BasisArg::Hermitian)]
    pub basis: BasisArg,
    /// Basis coefficients below this magnitude are dropped.
    #[arg(long, default_value_t = crate::decompose::elementary::PRUNE_TOL)]
    pub prune_tol: f64,
    /// Blocks of the transformed matrix used by the SVD method.
    #[arg(long, value_enum, default_value_t = BlocksArg::LowerRight)]
    pub svd_blocks: BlocksArg,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    #[arg(long, value_parser = parse_dims)]
    pub dims: Option<DimProfile>,
    #[arg(long, value_enum, default_value_t = MethodArg::Elementary)]
    pub method: MethodArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    Werner,
    RhoB,
    #[value(alias = "example3")]
    Corner,
    MaximallyMixed,
    RandomDensity,
    RandomSeparable,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub state: StateArg,
    /// Werner mixing parameter in [0, 1].
    #[arg(long)]
    pub f: Option<f64>,
    /// Three-qubit corner parameter a > 0.
    #[arg(long)]
    pub a: Option<f64>,
    /// rho-b parameter in [0, 1], or three-qubit corner parameter b > 0.
    #[arg(long)]
    pub b: Option<f64>,
    /// Three-qubit corner parameter c > 0.
    #[arg(long)]
    pub c: Option<f64>,
    /// Scale `rho-b` to unit trace.
    #[arg(long)]
    pub normalized: bool,
    /// Profile for maximally mixed and random states.
    #[arg(long, value_parser = parse_dims)]
    pub dims: Option<DimProfile>,
    /// Rank of a random density matrix (default: full).
    #[arg(long)]
    pub rank: Option<usize>,
    /// Number of product terms of a random separable state.
    #[arg(long, default_value_t = 3)]
    pub terms: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub state: StateArg,
    /// A value or a `start:stop:step` range.
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub normalized: bool,
    #[arg(long, value_enum, default_value_t = MethodArg::Elementary)]
    pub method: MethodArg,
    /// Also write the summary table as CSV here.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

fn parse_dims(s: &str) -> Result<DimProfile, String> {
    let dims = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad dimension `{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    DimProfile::new(dims).map_err(|e| e.to_string())
}

/// Failure with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Hermiticity(String),
    #[error("{0}")]
    Reconstruction(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => 2,
            Self::Hermiticity(_) => 3,
            Self::Reconstruction(_) => 4,
            Self::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotHermitian { .. } | Error::NotDensityMatrix(_) | Error::NonHermitianFactor { .. } => {
                Self::Hermiticity(e.to_string())
            }
            Error::ReconstructionFailure { .. } => Self::Reconstruction(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

fn read_matrix_file(path: &Path) -> Result<MatrixFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(MatrixFile::parse(&text)?)
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Parses `args` (including the program name) and runs the command; returns
/// the exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Decompose(a) => emit(out, &cmd_decompose(cli, a)?),
        Command::Analyze(a) => emit(out, &cmd_analyze(cli, a)?),
        Command::Gen(a) => emit(out, &to_json(&cmd_gen(cli, a)?)),
        Command::Sweep(a) => {
            let sweep = cmd_sweep(cli, a)?;
            if let Some(p) = &a.table {
                fs::write(p, summary_csv(&sweep.summary)?).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            }
            emit(out, &to_json(&sweep))
        }
    }
}

pub fn cmd_decompose(cli: &Cli, args: &DecomposeArgs) -> Result<String, CliError> {
    let file = read_matrix_file(&args.input)?;
    let profile = file.profile(args.dims.as_ref())?;
    let a = file.operator(cli.tol)?;
    profile.check(a.dim())?;
    let f = match (args.method, profile.parties()) {
        (MethodArg::Svd, 2) => {
            let blocks = match args.svd_blocks {
                BlocksArg::LowerRight => SvdBlocks::LowerRight,
                BlocksArg::Full => SvdBlocks::Full,
            };
            let d = profile.dims();
            decompose_svd_with(&a, d[0], d[1], blocks)?
        }
        (MethodArg::Svd, _) => decompose_svd_profile(&a, &profile)?,
        (MethodArg::Elementary, _) => {
            let opts = ElementaryOptions {
                basis: match args.basis {
                    BasisArg::Hermitian => ElementaryBasis::Hermitian,
                    BasisArg::Unit => ElementaryBasis::Unit,
                },
                merge: args.merge,
                prune_tol: args.prune_tol,
            };
            crate::decompose::decompose_elementary_with(&a, &profile, opts)?
        }
    };
    let err = reconstruction_error(&f, a.matrix());
    Ok(to_json(&FactorizationFile::new(&f, args.method.into(), file.digest(), err)))
}

fn report_for(
    a: &HermitianOperator,
    profile: &DimProfile,
    method: Method,
    hermitian_only: bool,
    digest: String,
) -> Result<ReportFile, CliError> {
    let opts = AnalyzeOptions {
        method,
        hermitian_only,
        ..AnalyzeOptions::default()
    };
    profile.check(a.dim())?;
    // Density checks run before decomposition so they map to exit code 3.
    if !hermitian_only {
        check_density(a)?;
    }
    let f: TensorFactorization = factorize(a, profile, &opts)?;
    let report = analyze_factorization(&f, hermitian_only)?;
    let spectra = SpectrumSummary::from_factorization(&f)?;
    Ok(ReportFile {
        tool_version: TOOL_VERSION.into(),
        input_digest: digest,
        dims: profile.dims().to_vec(),
        method,
        report,
        decomposition: DecompositionSummary {
            term_count: f.len(),
            factor_spectra: spectra.terms().to_vec(),
        },
    })
}

pub fn cmd_analyze(cli: &Cli, args: &AnalyzeArgs) -> Result<String, CliError> {
    let file = read_matrix_file(&args.input)?;
    let profile = file.profile(args.dims.as_ref())?;
    let a = file.operator(cli.tol)?;
    let report = report_for(&a, &profile, args.method.into(), cli.hermitian_only, file.digest())?;
    Ok(to_json(&report))
}

fn state_spec(state: StateArg, params: &BTreeMap<String, f64>, dims: Option<DimProfile>) -> Result<StateSpec, CliError> {
    let name = match state {
        StateArg::Werner => "werner",
        StateArg::RhoB => "rho-b",
        StateArg::Corner => "corner",
        StateArg::MaximallyMixed => "maximally-mixed",
        StateArg::RandomDensity | StateArg::RandomSeparable => {
            return Err(CliError::Input("random states have no parameter grid".into()))
        }
    };
    Ok(StateSpec::from_params(name, params, dims)?)
}

fn matrix_file_for(spec: &StateSpec) -> Result<MatrixFile, CliError> {
    let profile = spec.profile();
    let a = spec.build()?;
    let mut file = MatrixFile::new(&a, Some(&profile));
    file.metadata.insert("state".into(), spec.to_string().into());
    for (k, v) in spec.params() {
        file.metadata.insert(k, v.into());
    }
    Ok(file)
}

pub fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<MatrixFile, CliError> {
    let mut params = BTreeMap::new();
    for (k, v) in [("f", args.f), ("a", args.a), ("b", args.b), ("c", args.c)] {
        if let Some(v) = v {
            params.insert(k.to_string(), v);
        }
    }
    if args.normalized {
        params.insert("normalized".into(), 1.0);
    }
    match args.state {
        StateArg::RandomDensity | StateArg::RandomSeparable => {
            let profile = args
                .dims
                .clone()
                .ok_or_else(|| CliError::Input("random states need --dims".into()))?;
            let (a, name) = if args.state == StateArg::RandomDensity {
                let rank = args.rank.unwrap_or(profile.total());
                (random_density(profile.total(), rank, cli.seed)?, "random-density")
            } else {
                (random_separable(&profile, args.terms, cli.seed)?.0, "random-separable")
            };
            let mut file = MatrixFile::new(&a, Some(&profile));
            file.metadata.insert("state".into(), name.into());
            file.metadata.insert("seed".into(), cli.seed.into());
            Ok(file)
        }
        s => matrix_file_for(&state_spec(s, &params, args.dims.clone())?),
    }
}

/// `start:stop:step` grid (inclusive of `stop` up to rounding) or one value.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number `{t}` in `{s}`: {e}"));
        match parts.as_slice() {
            [v] => Ok(Self(vec![num(v)?])),
            [a, b, c] => {
                let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
                if step.is_nan() || step < 1e-9 || stop < start || !start.is_finite() || !stop.is_finite() {
                    return Err(format!("range `{s}` needs start <= stop and step > 0"));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                if n > 1_000_000 {
                    return Err(format!("range `{s}` has too many points"));
                }
                let pts = (0..=n)
                    .map(|i| {
                        // Rounded to 12 decimals so 0.15 prints as 0.15.
                        let v = ((start + i as f64 * step) * 1e12).round() / 1e12;
                        if (v - stop).abs() <= 1e-9 * step { stop } else { v }
                    })
                    .collect();
                Ok(Self(pts))
            }
            _ => Err(format!("malformed range `{s}`; expected `start:stop:step`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub parameter: String,
    pub value: f64,
    pub q: f64,
    pub lower_bound: f64,
    pub upper_bound_m_a: f64,
    pub ppt_min_eig: f64,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepFile {
    pub state: String,
    pub parameter: String,
    pub reports: Vec<ReportFile>,
    pub summary: Vec<SummaryRow>,
}

pub fn cmd_sweep(cli: &Cli, args: &SweepArgs) -> Result<SweepFile, CliError> {
    let mut fixed = BTreeMap::new();
    let mut ranged: Option<(String, Grid)> = None;
    for (k, v) in [("f", &args.f), ("a", &args.a), ("b", &args.b), ("c", &args.c)] {
        let Some(text) = v else { continue };
        let grid: Grid = text.parse().map_err(CliError::Input)?;
        if text.contains(':') {
            if ranged.is_some() {
                return Err(CliError::Input("only one parameter may be a range".into()));
            }
            ranged = Some((k.to_string(), grid));
        } else {
            fixed.insert(k.to_string(), grid.0[0]);
        }
    }
    if args.normalized {
        fixed.insert("normalized".into(), 1.0);
    }
    let (param, grid) = ranged.ok_or_else(|| CliError::Input("no parameter range given".into()))?;
    let mut reports = Vec::with_capacity(grid.0.len());
    let mut summary = Vec::with_capacity(grid.0.len());
    let mut state_name = String::new();
    for &v in &grid.0 {
        let mut params = fixed.clone();
        params.insert(param.clone(), v);
        let spec = state_spec(args.state, &params, None)?;
        state_name = spec.to_string();
        let file = matrix_file_for(&spec)?;
        let a = file.operator(cli.tol)?;
        let profile = spec.profile();
        let r = report_for(&a, &profile, args.method.into(), cli.hermitian_only, file.digest())?;
        summary.push(SummaryRow {
            parameter: param.clone(),
            value: v,
            q: r.report.q,
            lower_bound: r.report.lower_bound,
            upper_bound_m_a: r.report.upper_bound_m_a,
            ppt_min_eig: r.report.ppt_min_eig,
            verdict: r.report.verdict,
        });
        reports.push(r);
    }
    Ok(SweepFile {
        state: state_name,
        parameter: param,
        reports,
        summary,
    })
}

pub fn summary_csv(rows: &[SummaryRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["parameter", "value", "q", "lower_bound", "upper_bound_m_a", "ppt_min_eig", "verdict"])
        .map_err(|e| CliError::Io(e.to_string()))?;
    for r in rows {
        let verdict = r.verdict.map(|v| format!("{v:?}")).unwrap_or_default();
        w.write_record([
            r.parameter.clone(),
            r.value.to_string(),
            r.q.to_string(),
            r.lower_bound.to_string(),
            r.upper_bound_m_a.to_string(),
            r.ppt_min_eig.to_string(),
            verdict,
        ])
        .map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}
