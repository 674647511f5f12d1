//! Command-line front end of the `coulomb` binary.
//!
//! Every subcommand is a thin wrapper over a library operation. Results go
//! to `--out` (CSV or JSON; shortest round-trip decimals) together with a
//! [`RunManifest`] at `<out>.manifest.json`; without `--out` a JSON document
//! holding the result and the manifest is printed on stdout.
//!
//! Exit codes: 0 success, 1 validation failure (a FAIL check, or a
//! computation that could not reach its tolerance), 2 usage or domain error.
//! `COULOMB_THREADS` caps the size of the worker pool.

mod commands;
mod manifest;
pub mod validate;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::CoulombError;
use crate::evolution::QuadratureConfig;

pub use commands::{
    cmd_eigen, cmd_evolve, cmd_green, cmd_kernel, cmd_scan, cmd_transform, cmd_validate, ComplexTransform, EigenRow,
};
pub use manifest::{RunManifest, VERSION_TAG};
pub use validate::{run_suite, Check, Suite, ValidationReport};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "COULOMB_THREADS";

/// Top-level parser.
#[derive(Debug, Parser)]
#[command(name = "coulomb", version, about = "Distorted Fourier analysis of the radial repulsive Coulomb Hamiltonian")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Tabulate e(σ, r) with its evaluation regime and error estimate.
    Eigen(EigenArgs),
    /// Run a validation suite and report per-check PASS/FAIL.
    Validate(ValidateArgs),
    /// Apply e^{itH} to a radial profile.
    Evolve(EvolveArgs),
    /// Scan t^{3/2}‖e^{itH}f‖∞/‖f‖₁ over a range of times.
    Scan(ScanArgs),
    /// Mollified propagator kernel K_t(r, s).
    Kernel(KernelArgs),
    /// Forward or inverse distorted Fourier transform.
    Transform(TransformArgs),
    /// Resolvent kernel G(z; r, s) of (H + z²)⁻¹.
    Green(GreenArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eigen(_) => "eigen",
            Command::Validate(_) => "validate",
            Command::Evolve(_) => "evolve",
            Command::Scan(_) => "scan",
            Command::Kernel(_) => "kernel",
            Command::Transform(_) => "transform",
            Command::Green(_) => "green",
        }
    }
}

/// Output file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Options shared by every command that writes a file.
#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output file; the manifest goes to `<out>.manifest.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (default: from the extension of --out, else csv).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Also write a gnuplot script stub to `<out>.gp` (needs --out, csv).
    #[arg(long)]
    pub gnuplot: bool,
}

impl OutputArgs {
    /// The effective format.
    pub fn resolved_format(&self) -> Format {
        self.format.unwrap_or_else(|| match self.out.as_deref().and_then(Path::extension).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Csv,
        })
    }
}

/// Quadrature settings of the propagator, scan and kernel commands.
#[derive(Debug, Clone, Args, Serialize)]
pub struct QuadArgs {
    /// Relative amplitude below which the tail of the transform is dropped.
    #[arg(long, default_value_t = QuadratureConfig::default().panel_tol)]
    pub panel_tol: f64,
    /// Gauss–Legendre nodes per local oscillation period in σ.
    #[arg(long, default_value_t = QuadratureConfig::default().nodes_per_period)]
    pub nodes_per_period: f64,
    /// Fixed upper end of the σ table (default: adaptive from --panel-tol).
    #[arg(long)]
    pub sigma_max: Option<f64>,
}

impl QuadArgs {
    pub fn config(&self) -> QuadratureConfig {
        QuadratureConfig {
            panel_tol: self.panel_tol,
            nodes_per_period: self.nodes_per_period,
            sigma_max: self.sigma_max,
            ..QuadratureConfig::default()
        }
    }
}

/// A list of numbers: `1,2.5,4` or `lo:hi:n` (n linearly spaced points)
/// or `lo:hi:n:log` (n log-spaced points). The empty string is the empty grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Grid(pub Vec<f64>);

impl std::str::FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Grid(Vec::new()));
        }
        let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let log = match parts.len() {
                3 => false,
                4 if parts[3].trim() == "log" => true,
                _ => return Err(format!("`{s}`: expected lo:hi:n or lo:hi:n:log")),
            };
            let (lo, hi) = (num(parts[0])?, num(parts[1])?);
            let n: usize = parts[2].trim().parse().map_err(|e| format!("`{}`: {e}", parts[2]))?;
            if log && !(lo > 0.0 && hi > 0.0) {
                return Err(format!("`{s}`: log spacing needs positive end points"));
            }
            let at = |i: usize| -> f64 {
                if n == 1 {
                    return lo;
                }
                let f = i as f64 / (n - 1) as f64;
                if log {
                    lo * (hi / lo).powf(f)
                } else {
                    lo + (hi - lo) * f
                }
            };
            return Ok(Grid((0..n).map(at).collect()));
        }
        s.split(',').map(num).collect::<Result<Vec<_>, _>>().map(Grid)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct EigenArgs {
    /// Charge q > 0.
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long)]
    pub sigma_grid: Grid,
    #[arg(long)]
    pub r_grid: Grid,
    /// Requested relative accuracy of each value.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Report file (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Where a profile comes from: a file (`.json`, `r,value` or `r,re,im` CSV)
/// or the name of a built-in corpus profile (default `bump12`).
#[derive(Debug, Clone, Args, Serialize)]
pub struct ProfileArgs {
    #[arg(long, default_value = "bump12")]
    pub profile: String,
    /// Panel width used when sampling a corpus profile.
    #[arg(long, default_value_t = 1.0 / 32.0)]
    pub panel_width: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct EvolveArgs {
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long)]
    pub t: f64,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, default_value_t = 1.0)]
    pub t_min: f64,
    #[arg(long, default_value_t = 100.0)]
    pub t_max: f64,
    /// Number of log-spaced times.
    #[arg(long, default_value_t = 12)]
    pub points: usize,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct KernelArgs {
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub r: f64,
    #[arg(long)]
    pub s: f64,
    #[command(flatten)]
    pub quad: QuadArgs,
    /// Result file (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Direction of the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Fwd,
    Inv,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct TransformArgs {
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Input: a profile (fwd) or a transform written by `--direction fwd` (inv).
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, value_enum)]
    pub direction: Direction,
    /// Upper end of the σ grid (fwd).
    #[arg(long, default_value_t = crate::transform::DEFAULT_SIGMA_MAX)]
    pub sigma_max: f64,
    /// Largest radius the σ grid must resolve (fwd; default: end of the
    /// profile's support). Use the same value to put two transforms on one grid.
    #[arg(long)]
    pub r_scale: Option<f64>,
    /// Output radii (inv).
    #[arg(long)]
    pub r_grid: Option<Grid>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct GreenArgs {
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long)]
    pub z_re: f64,
    #[arg(long, default_value_t = 0.0)]
    pub z_im: f64,
    #[arg(long)]
    pub r: f64,
    #[arg(long)]
    pub s: f64,
    /// Result file (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure of a command, mapped to an exit code by [`CliError::exit_code`].
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Numeric(#[from] CoulombError),
    #[error("usage error: {0}")]
    Usage(String),
}

impl CliError {
    /// 2 for usage, domain and input errors; 1 when a computation could not
    /// certify its result (no convergence, resolution, reflection, overflow).
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(e) => match e {
                CoulombError::Domain { .. } | CoulombError::Input(_) | CoulombError::Regime(_) => 2,
                CoulombError::Convergence { .. }
                | CoulombError::Resolution(_)
                | CoulombError::Reflection { .. }
                | CoulombError::Overflow { .. } => 1,
            },
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    /// Full result, printed when no output file is given.
    pub result: serde_json::Value,
    /// Short summary stored in the manifest.
    pub summary: serde_json::Value,
    pub tolerances: BTreeMap<String, f64>,
    pub outputs: Vec<PathBuf>,
    /// 0, or 1 for a validation failure.
    pub exit_code: i32,
}

fn thread_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
    }
}

fn params<T: Serialize>(a: &T) -> serde_json::Value {
    serde_json::to_value(a).unwrap_or(serde_json::Value::Null)
}

fn dispatch(cmd: &Command) -> Result<(serde_json::Value, Outcome), CliError> {
    Ok(match cmd {
        Command::Eigen(a) => (params(a), cmd_eigen(a)?),
        Command::Validate(a) => (params(a), cmd_validate(a)?),
        Command::Evolve(a) => (params(a), cmd_evolve(a)?),
        Command::Scan(a) => (params(a), cmd_scan(a)?),
        Command::Kernel(a) => (params(a), cmd_kernel(a)?),
        Command::Transform(a) => (params(a), cmd_transform(a)?),
        Command::Green(a) => (params(a), cmd_green(a)?),
    })
}

fn execute(cmd: &Command) -> Result<i32, CliError> {
    let start = Instant::now();
    let threads = thread_count()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?;
    let (mut parameters, outcome) = pool.install(|| dispatch(cmd))?;
    if let serde_json::Value::Object(m) = &mut parameters {
        if let Some(cfg) = quadrature_of(cmd) {
            m.insert("quadrature".into(), serde_json::to_value(cfg).unwrap_or_default());
        }
    }
    let manifest = RunManifest {
        command: cmd.name().to_string(),
        parameters,
        version: VERSION_TAG.to_string(),
        threads: pool.current_num_threads(),
        wall_time_s: start.elapsed().as_secs_f64(),
        tolerances: outcome.tolerances.clone(),
        summary: outcome.summary.clone(),
        outputs: outcome.outputs.clone(),
        exit_code: outcome.exit_code,
    };
    match outcome.outputs.first() {
        Some(out) => manifest.write(&RunManifest::path_for(out))?,
        None => {
            let doc = serde_json::json!({ "result": outcome.result, "manifest": manifest });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
        }
    }
    Ok(outcome.exit_code)
}

/// The full quadrature configuration a command runs with, for the manifest.
fn quadrature_of(cmd: &Command) -> Option<QuadratureConfig> {
    match cmd {
        Command::Evolve(a) => Some(a.quad.config()),
        Command::Scan(a) => Some(a.quad.config()),
        Command::Kernel(a) => Some(a.quad.config()),
        _ => None,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors are reported on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("coulomb {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}
