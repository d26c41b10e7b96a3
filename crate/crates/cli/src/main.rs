//! `holophase`: generate, sample, reconstruct and verify functions from
//! modulus-only data.

mod commands;
mod experiment;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holophase::error::ErrorClass;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "holophase", version, about = "Phase retrieval of holomorphic functions from modulus data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random function spec as JSON
    Generate(GenerateArgs),
    /// Sample |f| of a spec on a segment pair or a circle
    Sample(SampleArgs),
    /// Recover z^k exp(phi) from traces on two crossing segments
    ReconstructSegments(SegmentArgs),
    /// Recover z^k B O from traces on the unit circle and |z| = rho
    ReconstructCircles(CircleArgs),
    /// Decide whether two specs agree up to a unimodular constant
    Verify(VerifyArgs),
    /// Two-circle modulus check and gauge conclusion for rational specs
    Lemma(LemmaArgs),
    /// Run a batch experiment and write a results CSV
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    PowerSeries,
    Factored,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    Segment,
    Circle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum, default_value = "power-series")]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exponent degree (power series) or outer degree (factored)
    #[arg(long)]
    pub degree: Option<usize>,
    /// Vanishing order at the origin (power series)
    #[arg(long, default_value_t = 0)]
    pub order: u32,
    #[arg(long)]
    pub max_zeros: Option<usize>,
    /// Add singular atoms to the numerator (factored)
    #[arg(long)]
    pub atoms: bool,
    /// Add singular atoms to the denominator (factored)
    #[arg(long)]
    pub denominator: bool,
    /// Radius that generated zeros keep clear of
    #[arg(long, default_value_t = 0.6)]
    pub rho: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_enum)]
    pub domain: Domain,
    #[arg(long, default_value_t = 401)]
    pub samples: usize,
    /// Rotation angle of the second segment
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Circle radius, in (0, 1]
    #[arg(long)]
    pub rho: Option<f64>,
    /// Midpoint of the segments as `re,im`
    #[arg(long, default_value = "0,0")]
    pub midpoint: String,
    #[arg(long, default_value_t = 1.0)]
    pub half_length: f64,
    /// Relative multiplicative noise level
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Let the circle pass through zeros (for deflation)
    #[arg(long)]
    pub allow_zeros: bool,
    /// Output CSV (base segment, or the circle)
    #[arg(long)]
    pub out: PathBuf,
    /// Output CSV for the rotated segment
    #[arg(long)]
    pub out_rotated: Option<PathBuf>,
}

#[derive(Args)]
pub struct SegmentArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long)]
    pub rotated: PathBuf,
    /// Expected rotation angle; checked against the trace headers
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Truncation order N of the exponent
    #[arg(long, default_value_t = 16)]
    pub degree: usize,
    /// Relative fit residual threshold
    #[arg(long, default_value_t = holophase::segment_retrieval::DEFAULT_FIT_RESIDUAL_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args)]
pub struct CircleArgs {
    /// Trace on the unit circle
    #[arg(long)]
    pub outer: PathBuf,
    /// Trace on |z| = rho
    #[arg(long)]
    pub inner: PathBuf,
    /// Expected inner radius; checked against the trace header
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long, default_value_t = 5)]
    pub max_zeros: usize,
    #[arg(long, default_value_t = holophase::circle_retrieval::DEFAULT_RECONSTRUCTION_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long, default_value_t = 0.6)]
    pub rho: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args)]
pub struct LemmaArgs {
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub rho: f64,
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Start of a reflection orbit to report, as `re,im`
    #[arg(long)]
    pub orbit_start: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub orbit_len: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args)]
pub struct ExperimentArgs {
    /// Experiment config JSON
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides the config seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides the config output path
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl From<holophase::Error> for Failure {
    fn from(e: holophase::Error) -> Self {
        let code = match e.class() {
            ErrorClass::Data => 1,
            ErrorClass::Conditioning => 2,
        };
        Failure { code, kind: e.kind(), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, kind: "io", message: e.to_string() }
    }
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, kind: "usage", message: message.into() }
    }
}

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("HOLOPHASE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialization only happens in tests; ignoring it is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate(a) => commands::generate(&a),
        Command::Sample(a) => commands::sample(&a),
        Command::ReconstructSegments(a) => commands::reconstruct_segments(&a),
        Command::ReconstructCircles(a) => commands::reconstruct_circles(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Lemma(a) => commands::lemma(&a),
        Command::Experiment(a) => experiment::run(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let diag = serde_json::json!({ "error": f.kind, "message": f.message, "exit_code": f.code });
            eprintln!("{diag}");
            ExitCode::from(f.code)
        }
    }
}
