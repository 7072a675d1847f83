//! File ingestion, report assembly, and CSV emission behind the isopencil
//! binary.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use isopencil::defaults::RANK_REL_TOL;
use isopencil::{
    check_condition_ii, eig_hermitian, hermitian_part, integrate_u, is_nilpotent, rank_sweep,
    solve_k, spectral_sweep_deviation, support_sweep, Complex64, ComplexMatrix,
};

/// Everything that can go wrong before mathematics starts (exit code 1),
/// plus numeric failures bubbled up from the analyses (exit code 2).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse: {0}")]
    Parse(String),
    #[error("invalid value: {0}")]
    Value(String),
    #[error("numeric: {0}")]
    Numeric(#[from] isopencil::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::Value(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    rows: Vec<Vec<[f64; 2]>>,
}

/// Read the JSON matrix format: {"n": 4, "rows": [[[re, im], ...], ...]}.
pub fn parse_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = std::fs::read_to_string(path)?;
    let file: MatrixFile =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
    if file.n == 0 {
        return Err(CliError::Parse("matrix dimension must be positive".into()));
    }
    if file.rows.len() != file.n || file.rows.iter().any(|r| r.len() != file.n) {
        return Err(CliError::Parse(format!(
            "expected {0} rows of {0} entries",
            file.n
        )));
    }
    let m = ComplexMatrix::from_fn(file.n, |i, j| {
        let [re, im] = file.rows[i][j];
        Complex64::new(re, im)
    });
    if !m.all_finite() {
        return Err(CliError::Value("matrix entries must be finite".into()));
    }
    Ok(m)
}

/// Canonical serialization of a matrix; parse_matrix round-trips it
/// bit-exactly (shortest-representation floats).
pub fn write_matrix(b: &ComplexMatrix) -> String {
    let n = b.dim();
    let rows: Vec<Vec<[f64; 2]>> = (0..n)
        .map(|i| (0..n).map(|j| [b[(i, j)].re, b[(i, j)].im]).collect())
        .collect();
    serde_json::to_string(&MatrixFile { n, rows }).expect("matrix serialization cannot fail")
}

/// Hex SHA-256 of the canonical serialization, so the digest identifies the
/// matrix regardless of input file formatting.
pub fn matrix_digest(b: &ComplexMatrix) -> String {
    let mut hasher = Sha256::new();
    hasher.update(write_matrix(b).as_bytes());
    let mut out = String::new();
    for byte in hasher.finalize() {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub samples: usize,
    pub tol: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            samples: 720,
            tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub samples: usize,
    pub direct_tol: f64,
    pub word_tol: f64,
    pub range_tol: f64,
    pub witness_tol: f64,
    pub rank_rel_tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LaxSummary {
    pub steps: usize,
    pub max_similarity_error: f64,
    pub max_unitarity_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input_digest: String,
    pub n: usize,
    pub nilpotent: bool,
    pub thm1_direct: bool,
    pub thm1_word: bool,
    pub thm1_range: bool,
    pub thm32_exists: bool,
    pub thm32_residual: f64,
    pub radii: Vec<f64>,
    pub rank_constant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lax_summary: Option<LaxSummary>,
    pub tolerances: Tolerances,
}

impl AnalysisReport {
    /// UTF-8 JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serialization cannot fail");
        let mut out = serde_json::to_string_pretty(&value).expect("value printing cannot fail");
        out.push('\n');
        out
    }
}

fn validate(config: &Config) -> Result<(), CliError> {
    if config.samples < 8 {
        return Err(CliError::Value(format!(
            "samples must be at least 8, got {}",
            config.samples
        )));
    }
    if !(config.tol > 0.0 && config.tol.is_finite()) {
        return Err(CliError::Value(format!(
            "tolerance must be a positive number, got {}",
            config.tol
        )));
    }
    Ok(())
}

/// Run every verdict: the three spectral-constancy characterizations, the
/// rotational witness, compression radii, and the rank sweep.
pub fn run_analyze(b: &ComplexMatrix, config: &Config) -> Result<AnalysisReport, CliError> {
    validate(config)?;
    let n = b.dim();
    let scale = config.tol * (1.0 + b.frobenius_norm());
    let direct_dev = spectral_sweep_deviation(b, config.samples)?;
    let words = check_condition_ii(b, config.tol)?;
    let mut range_ok = true;
    let mut radii = Vec::with_capacity(n.div_ceil(2));
    for k in 1..=n.div_ceil(2) {
        let profile = support_sweep(b, k, config.samples)?;
        if profile.disk_statistic() > scale {
            range_ok = false;
        }
        radii.push(profile.radius.unwrap_or(0.0));
    }
    let ranks = rank_sweep(b, config.samples, RANK_REL_TOL)?;
    let witness = solve_k(b, config.tol)?;
    Ok(AnalysisReport {
        input_digest: matrix_digest(b),
        n,
        nilpotent: is_nilpotent(b, config.tol),
        thm1_direct: direct_dev <= scale,
        thm1_word: words.satisfied,
        thm1_range: range_ok && ranks.constant,
        thm32_exists: witness.exists,
        thm32_residual: witness.residual,
        radii,
        rank_constant: ranks.constant,
        lax_summary: None,
        tolerances: Tolerances {
            samples: config.samples,
            direct_tol: config.tol,
            word_tol: config.tol,
            range_tol: config.tol,
            witness_tol: config.tol,
            rank_rel_tol: RANK_REL_TOL,
        },
    })
}

/// Attach the flow metrics produced by integrate_u to a fresh report.
pub fn run_lax(b: &ComplexMatrix, config: &Config, steps: usize) -> Result<AnalysisReport, CliError> {
    if steps < 16 {
        return Err(CliError::Value(format!(
            "steps must be at least 16, got {steps}"
        )));
    }
    let mut report = run_analyze(b, config)?;
    let traj = integrate_u(b, steps)?;
    report.lax_summary = Some(LaxSummary {
        steps,
        max_similarity_error: traj.max_similarity_error,
        max_unitarity_error: traj.max_unitarity_error,
    });
    Ok(report)
}

/// CSV of the k-th support value over the angle grid: "theta,lambda_k",
/// 17 significant digits.
pub fn emit_support_csv(
    b: &ComplexMatrix,
    k: usize,
    samples: usize,
    path: &Path,
) -> Result<(), CliError> {
    if k == 0 || k > b.dim() {
        return Err(CliError::Value(format!(
            "k must be in 1..={}, got {k}",
            b.dim()
        )));
    }
    if samples < 8 {
        return Err(CliError::Value(format!(
            "samples must be at least 8, got {samples}"
        )));
    }
    let mut out = String::from("theta,lambda_k\n");
    for j in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
        let values = eig_hermitian(&hermitian_part(b, theta))
            .map_err(CliError::Numeric)?
            .values;
        let _ = writeln!(out, "{theta:.16e},{:.16e}", values[k - 1]);
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Witness summary for the `similar` subcommand: the generator when one
/// exists, with the verified conjugation error over the angle grid.
pub fn run_similar(
    b: &ComplexMatrix,
    config: &Config,
) -> Result<(Option<ComplexMatrix>, f64), CliError> {
    validate(config)?;
    let sol = solve_k(b, config.tol)?;
    if !sol.exists {
        return Ok((None, sol.residual));
    }
    let err = isopencil::verify_rotation_similarity(b, &sol.k, config.samples.min(256))?;
    Ok((Some(sol.k), err))
}
