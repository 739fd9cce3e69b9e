//! Command-line front end for `corrgauss`.
//!
//! - `point`: environment class and both protocols at one `(tau, omega, g, g')`.
//! - `scan`: classify every cell of the correlation plane.
//! - `converge`: finite-`mu` PTS eigenvalue against the large-`mu` value.
//!
//! Output is CSV (default) or JSON, written to `--output`, to the path in
//! `CORRGAUSS_OUTPUT`, or to stdout. Exit codes: 0 success, 2 usage,
//! 3 non-physical point, 4 I/O.

mod commands;
mod error;
pub mod format;

use std::fs;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corrgauss::{OmegaMode, Protocol};

pub use commands::{converge, point, scan_grid, Output};
pub use error::CliError;

pub const OUTPUT_ENV: &str = "CORRGAUSS_OUTPUT";

#[derive(Debug, Parser)]
#[command(
    name = "corrgauss",
    version,
    about = "Entanglement distribution through correlated Gaussian environments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one environment and evaluate both protocols there
    Point(PointArgs),
    /// Rasterize the correlation plane (g, g')
    Scan(ScanArgs),
    /// Finite-squeezing PTS eigenvalue against its large-squeezing limit
    Converge(ConvergeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    Direct,
    Swap,
    Environment,
}

impl From<ProtocolArg> for Protocol {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::Direct => Protocol::Direct,
            ProtocolArg::Swap => Protocol::Swap,
            ProtocolArg::Environment => Protocol::EnvironmentOnly,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Noise {
    /// Beam-splitter transmissivity, in (0, 1)
    #[arg(long)]
    pub tau: f64,
    /// Thermal variance of each environmental mode (>= 1)
    #[arg(long, conflicts_with = "at_eb")]
    pub omega: Option<f64>,
    /// Use the entanglement-breaking threshold (1 + tau) / (1 - tau); the default without --omega
    #[arg(long)]
    pub at_eb: bool,
}

impl Noise {
    pub fn omega_mode(&self) -> OmegaMode {
        match self.omega {
            Some(omega) => OmegaMode::Fixed(omega),
            None => OmegaMode::AtEbThreshold,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Sink {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; `-` for stdout
    #[arg(long, short, env = OUTPUT_ENV)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub noise: Noise,
    /// Correlation of the q quadratures
    #[arg(long, allow_negative_numbers = true)]
    pub g: f64,
    /// Correlation of the p quadratures
    #[arg(long, allow_negative_numbers = true)]
    pub gp: f64,
    /// Also run the finite-squeezing pipelines at this EPR variance
    #[arg(long)]
    pub mu: Option<f64>,
    #[command(flatten)]
    pub sink: Sink,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub noise: Noise,
    #[arg(long, value_enum, default_value_t = ProtocolArg::Direct)]
    pub protocol: ProtocolArg,
    /// lo,hi; defaults to [-omega, omega]
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub g_range: Option<(f64, f64)>,
    /// lo,hi; defaults to [-omega, omega]
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub gp_range: Option<(f64, f64)>,
    /// Cells per axis
    #[arg(long, default_value_t = 201)]
    pub resolution: usize,
    /// Worker threads for the scan (all cores when absent)
    #[arg(long)]
    pub threads: Option<NonZeroUsize>,
    #[command(flatten)]
    pub sink: Sink,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub noise: Noise,
    #[arg(long, allow_negative_numbers = true)]
    pub g: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub gp: f64,
    #[arg(long, value_enum, default_value_t = ProtocolArg::Direct)]
    pub protocol: ProtocolArg,
    /// EPR variances to evaluate
    #[arg(long, value_delimiter = ',', default_values_t = [1e2, 1e4, 1e6])]
    pub mu: Vec<f64>,
    #[command(flatten)]
    pub sink: Sink,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected lo,hi, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok((parse(lo)?, parse(hi)?))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let (output, sink) = match &cli.command {
        Command::Point(args) => (point(args)?, &args.sink),
        Command::Scan(args) => (scan_grid(args)?, &args.sink),
        Command::Converge(args) => (converge(args)?, &args.sink),
    };
    let text = match sink.format {
        Format::Csv => output.to_csv(),
        Format::Json => output.to_json(),
    };
    write_output(sink.output.as_ref(), &text)
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path.filter(|p| p.as_os_str() != "-") {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}
