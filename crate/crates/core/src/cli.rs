//! Command-line front end: `gen`, `check`, `build` and `search` verbs over
//! JSON files.
//!
//! Exit codes: 0 on success or a passing check, 1 when a check fails, 2 on
//! usage or input errors. Stdout carries JSON only.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::baxter::{
    braid_from_tl, check_braid, check_ybe, default_samples, spectral_ybe_samples, to_plain_r, BraidData,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};
use crate::error::{Error, Result};
use crate::hadamard::{dephase, dita, f4_family, f6_family, fourier, is_butson, is_chm, is_ghm};
use crate::json;
use crate::linalg::{ComplexValue, DenseMatrix, Tolerance};
use crate::master::{
    check_master_condition, f4_master, f6_master, fourier_master, h0, h1, master_matrix, nest,
    pigeonhole_obstruction, search_master_representation, MasterSpec, NestingSpec,
};
use crate::tlrep::{
    build_local_generator, check_master4, embed, fixture_u1, fixture_u2, reconstruct_m, verify_tl,
    weighted_hadamard_check, TLAnsatz,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hadamard-tl", version, about = "Temperley-Lieb representations from Hadamard data")]
pub struct Cli {
    /// Absolute tolerance for every residual.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Generate matrices and master data.
    #[command(subcommand)]
    Gen(GenTarget),
    /// Verify a relation; exits 1 when a residual exceeds the tolerance.
    #[command(subcommand)]
    Check(CheckTarget),
    /// Build operators.
    #[command(subcommand)]
    Build(BuildTarget),
    /// Search for representations.
    #[command(subcommand)]
    Search(SearchTarget),
}

#[derive(Debug, Subcommand)]
pub enum GenTarget {
    Fourier {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        l: i64,
    },
    F4 {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: ComplexValue,
    },
    F6 {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: ComplexValue,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        b: ComplexValue,
    },
    Dita {
        #[arg(long)]
        outer: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        blocks: Vec<PathBuf>,
    },
    Nest {
        #[arg(long)]
        spec: PathBuf,
    },
    H0,
    H1 {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: ComplexValue,
    },
    FixtureU1,
    FixtureU2,
    MasterFourier {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        l: i64,
    },
    MasterF4 {
        #[arg(long)]
        k: u64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    MasterF6 {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
    },
}

#[derive(Debug, Args)]
pub struct BraidSource {
    /// Braid data JSON `{q, nu, r_check}`.
    #[arg(long, conflicts_with = "ansatz")]
    pub braid: Option<PathBuf>,
    /// TL ansatz JSON; braid data is built from it.
    #[arg(long)]
    pub ansatz: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CheckTarget {
    Chm {
        #[arg(long)]
        matrix: PathBuf,
    },
    Ghm {
        #[arg(long)]
        matrix: PathBuf,
    },
    Butson {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        q: u64,
    },
    Master {
        #[arg(long)]
        spec: PathBuf,
    },
    Master4 {
        /// Eigenvector matrix P.
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        spec: PathBuf,
    },
    Tl {
        #[arg(long)]
        ansatz: PathBuf,
        /// Overrides the site count in the ansatz.
        #[arg(long)]
        sites: Option<usize>,
    },
    Hecke {
        #[command(flatten)]
        source: BraidSource,
    },
    Braid {
        /// Raw `Ř` matrix.
        #[arg(long, conflicts_with_all = ["braid", "ansatz"])]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        source: BraidSource,
    },
    Ybe {
        #[command(flatten)]
        source: BraidSource,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    WeightedHadamard {
        /// Master matrix Ω.
        #[arg(long)]
        matrix: PathBuf,
        /// JSON `{v, w, alpha?}`; alpha defaults to `Σ v_i w_i`.
        #[arg(long)]
        weights: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum BuildTarget {
    TlLocal {
        #[arg(long)]
        ansatz: PathBuf,
    },
    TlEmbedded {
        #[arg(long)]
        ansatz: PathBuf,
        /// 1-based site of the generator.
        #[arg(long)]
        site: usize,
    },
    Braid {
        #[arg(long)]
        ansatz: PathBuf,
    },
    Rmatrix {
        #[command(flatten)]
        source: BraidSource,
    },
    ReconstructM {
        #[arg(long)]
        spec: PathBuf,
        /// Eigenvector Hadamard matrix H.
        #[arg(long)]
        h: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchTarget {
    MasterRep {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 12)]
        exponent_bound: u64,
        #[arg(long, default_value_t = 12)]
        root_order_bound: u64,
    },
}

#[derive(Debug, Deserialize)]
struct Weights {
    v: Vec<ComplexValue>,
    w: Vec<ComplexValue>,
    #[serde(default)]
    alpha: Option<ComplexValue>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Accepts `re` or `re,im`.
pub fn parse_complex(s: &str) -> std::result::Result<ComplexValue, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (parse(re)?, parse(im)?),
        None => (parse(s)?, 0.0),
    };
    crate::linalg::complex(re, im).map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version exit 0; help text stays off stdout
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Outcome { code, stdout: String::new(), stderr: e.render().to_string() };
        }
    };
    match execute(&cli) {
        Ok((passed, value)) => {
            let code = if passed { EXIT_OK } else { EXIT_FAILED };
            match emit(&cli, &value) {
                Ok(stdout) => Outcome { code, stdout, stderr: String::new() },
                Err(e) => usage_error(&e),
            }
        }
        Err(e) => usage_error(&e),
    }
}

fn usage_error(e: &Error) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn emit(cli: &Cli, value: &Value) -> Result<String> {
    match &cli.out {
        Some(path) => {
            json::write_file(path, value)?;
            Ok(String::new())
        }
        None => {
            let mut text = json::to_string(value)?;
            text.push('\n');
            Ok(text)
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn execute(cli: &Cli) -> Result<(bool, Value)> {
    let tol = Tolerance::with_abs(cli.tol)?;
    match &cli.verb {
        Verb::Gen(t) => Ok((true, gen(t)?)),
        Verb::Check(t) => check(t, &tol, cli.seed),
        Verb::Build(t) => Ok((true, build(t, &tol)?)),
        Verb::Search(t) => Ok((true, search(t, &tol)?)),
    }
}

fn gen(target: &GenTarget) -> Result<Value> {
    match target {
        GenTarget::Fourier { n, l } => to_value(&fourier(*n, *l)?),
        GenTarget::F4 { a } => to_value(&f4_family(*a)?),
        GenTarget::F6 { a, b } => to_value(&f6_family(*a, *b)?),
        GenTarget::Dita { outer, blocks } => {
            let a = json::read_matrix(outer)?;
            let bs = blocks.iter().map(|p| json::read_matrix(p)).collect::<Result<Vec<_>>>()?;
            to_value(&dita(&a, &bs)?)
        }
        GenTarget::Nest { spec } => {
            let spec: NestingSpec = json::read_file(spec)?;
            to_value(&nest(&spec)?)
        }
        GenTarget::H0 => to_value(&h0()),
        GenTarget::H1 { a } => to_value(&h1(*a)?),
        GenTarget::FixtureU1 => to_value(&fixture_u1()),
        GenTarget::FixtureU2 => to_value(&fixture_u2()),
        GenTarget::MasterFourier { n, l } => to_value(&fourier_master(*n, *l)?),
        GenTarget::MasterF4 { k, m } => to_value(&f4_master(*k, *m)?),
        GenTarget::MasterF6 { k, r, s } => to_value(&f6_master(*k, *r, *s)?),
    }
}

fn load_braid(source: &BraidSource, tol: &Tolerance) -> Result<BraidData> {
    match (&source.braid, &source.ansatz) {
        (Some(path), None) => json::read_file(path),
        (None, Some(path)) => braid_from_ansatz(path, tol),
        _ => Err(Error::InvalidParameter("exactly one of --braid or --ansatz is required".into())),
    }
}

fn braid_from_ansatz(path: &Path, tol: &Tolerance) -> Result<BraidData> {
    let ansatz: TLAnsatz = json::read_file(path)?;
    let t = build_local_generator(&ansatz, tol)?;
    braid_from_tl(&t, ansatz.alpha(), tol)
}

fn within(tol: &Tolerance, residuals: &[f64]) -> bool {
    residuals.iter().all(|r| r.is_finite() && *r <= tol.abs_tol)
}

fn check(target: &CheckTarget, tol: &Tolerance, seed: u64) -> Result<(bool, Value)> {
    match target {
        CheckTarget::Chm { matrix } => {
            let u = json::read_matrix(matrix)?;
            let verdict = is_ghm(&u, tol);
            let passed = is_chm(&u, tol);
            Ok((passed, json!({ "passed": passed, "verdict": to_value(&verdict)? })))
        }
        CheckTarget::Ghm { matrix } => {
            let u = json::read_matrix(matrix)?;
            let verdict = is_ghm(&u, tol);
            Ok((verdict.is_ghm, json!({ "passed": verdict.is_ghm, "verdict": to_value(&verdict)? })))
        }
        CheckTarget::Butson { matrix, q } => {
            let u = json::read_matrix(matrix)?;
            let passed = is_butson(&u, *q, tol);
            Ok((passed, json!({ "passed": passed, "q": q, "verdict": to_value(&is_ghm(&u, tol))? })))
        }
        CheckTarget::Master { spec } => {
            let spec: MasterSpec = json::read_file(spec)?;
            let report = check_master_condition(&spec, tol);
            Ok((report.passed, to_value(&report)?))
        }
        CheckTarget::Master4 { p, spec } => {
            let p = json::read_matrix(p)?;
            let spec: MasterSpec = json::read_file(spec)?;
            let report = check_master4(&p, spec.lambdas(), &spec.exponents_i64(), tol)?;
            Ok((report.passed, to_value(&report)?))
        }
        CheckTarget::Tl { ansatz, sites } => {
            let mut ansatz: TLAnsatz = json::read_file(ansatz)?;
            if let Some(sites) = sites {
                ansatz = ansatz.with_sites(*sites)?;
            }
            let report = verify_tl(&ansatz, tol)?;
            Ok((report.passed, to_value(&report)?))
        }
        CheckTarget::Hecke { source } => {
            let b = load_braid(source, tol)?;
            let hecke = b.hecke_residual();
            let inverse = b.hecke_inverse_residual(tol)?;
            let passed = within(tol, &[hecke, inverse]);
            Ok((
                passed,
                json!({
                    "q": to_value(&b.q)?,
                    "nu": to_value(&b.nu)?,
                    "hecke_residual": hecke,
                    "hecke_inverse_residual": inverse,
                    "passed": passed,
                }),
            ))
        }
        CheckTarget::Braid { matrix, source } => {
            let r_check = match matrix {
                Some(path) => json::read_matrix(path)?,
                None => load_braid(source, tol)?.r_check,
            };
            let n = (r_check.rows() as f64).sqrt().round() as usize;
            let braid = check_braid(&r_check)?;
            let plain = crate::linalg::mat_mul(&DenseMatrix::flip(n), &r_check)?;
            let ybe = check_ybe(&plain)?;
            let passed = within(tol, &[braid, ybe]);
            Ok((passed, json!({ "braid_residual": braid, "ybe_residual": ybe, "passed": passed })))
        }
        CheckTarget::Ybe { source, samples } => {
            let b = load_braid(source, tol)?;
            let braid = check_braid(&b.r_check)?;
            let results = spectral_ybe_samples(&b, &default_samples(seed, *samples))?;
            let worst = results.iter().map(|s| s.residual).fold(0.0, f64::max);
            let passed = within(tol, &[braid, worst]);
            Ok((
                passed,
                json!({
                    "q": to_value(&b.q)?,
                    "nu": to_value(&b.nu)?,
                    "braid_residual": braid,
                    "spectral_worst": worst,
                    "samples": to_value(&results)?,
                    "seed": seed,
                    "passed": passed,
                }),
            ))
        }
        CheckTarget::WeightedHadamard { matrix, weights } => {
            let omega = json::read_matrix(matrix)?;
            let weights: Weights = json::read_file(weights)?;
            let alpha = weights
                .alpha
                .unwrap_or_else(|| weights.v.iter().zip(&weights.w).map(|(a, b)| a * b).sum());
            let report = weighted_hadamard_check(&omega, &weights.v, &weights.w, alpha, tol)?;
            Ok((
                report.passed,
                json!({ "alpha": to_value(&alpha)?, "max_residual": report.max_residual, "passed": report.passed }),
            ))
        }
    }
}

fn build(target: &BuildTarget, tol: &Tolerance) -> Result<Value> {
    match target {
        BuildTarget::TlLocal { ansatz } => {
            let ansatz: TLAnsatz = json::read_file(ansatz)?;
            to_value(&build_local_generator(&ansatz, tol)?)
        }
        BuildTarget::TlEmbedded { ansatz, site } => {
            let ansatz: TLAnsatz = json::read_file(ansatz)?;
            let local = build_local_generator(&ansatz, tol)?;
            to_value(&embed(&local, *site, ansatz.sites(), ansatz.dim())?)
        }
        BuildTarget::Braid { ansatz } => to_value(&braid_from_ansatz(ansatz, tol)?),
        BuildTarget::Rmatrix { source } => to_value(&to_plain_r(&load_braid(source, tol)?)?),
        BuildTarget::ReconstructM { spec, h } => {
            let spec: MasterSpec = json::read_file(spec)?;
            let h = json::read_matrix(h)?;
            to_value(&reconstruct_m(&master_matrix(&spec), &h, spec.lambdas(), tol)?)
        }
    }
}

fn search(target: &SearchTarget, tol: &Tolerance) -> Result<Value> {
    match target {
        SearchTarget::MasterRep {
            matrix,
            exponent_bound,
            root_order_bound,
        } => {
            let u = json::read_matrix(matrix)?;
            let (dephased, _) = dephase(&u)?;
            let obstruction = pigeonhole_obstruction(&dephased, tol);
            let found = search_master_representation(&dephased, *exponent_bound, *root_order_bound, tol)?;
            Ok(json!({
                "found": found.is_some(),
                "spec": to_value(&found)?,
                "pigeonhole": to_value(&obstruction)?,
                "exponent_bound": exponent_bound,
                "root_order_bound": root_order_bound,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("2").unwrap(), ComplexValue::new(2.0, 0.0));
        assert_eq!(parse_complex("-0.5, 1").unwrap(), ComplexValue::new(-0.5, 1.0));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn gen_fourier_three() {
        let out = dispatch(["hadamard-tl", "gen", "fourier", "--n", "3"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let m: DenseMatrix = json::from_str(&out.stdout).unwrap();
        assert_eq!(m.shape(), (3, 3));
    }

    #[test]
    fn unknown_command_is_usage_error() {
        let out = dispatch(["hadamard-tl", "frobnicate"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("Usage"));
    }
}
