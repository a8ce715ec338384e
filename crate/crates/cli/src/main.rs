// `!(x <= tol)` guards are deliberate: they also catch NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::Format;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "hprolate", version, about = "Discrete Hankel prolate spheroidal spectra, kernels and bound checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive zeros of J_alpha
    Zeros(ZerosArgs),
    /// Eigenvalues (and optionally coefficient vectors) of the discrete problem
    Spectrum(SpectrumArgs),
    /// Evaluate decay, comparison, kernel, l2, trace and plunge checks
    Analyze(AnalyzeArgs),
    /// Tabulate the discrete, continuous, correction and residual kernels
    Kernel(KernelArgs),
    /// Upper bound on Ingham's constant from integer-frequency spectra
    Ingham(InghamArgs),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat `key = value` file of flag values; explicit flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Problem {
    /// Bessel order, >= -0.5
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Band limit in (0, 1]
    #[arg(long, default_value_t = 0.5)]
    omega: f64,
    /// Number of basis functions
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Quadrature points on (0, omega); at least 10*n, rounded up to a multiple of 16
    #[arg(long)]
    quad_points: Option<usize>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
struct ZerosArgs {
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Gram,
    Nystrom,
    Both,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
struct SpectrumArgs {
    #[command(flatten)]
    problem: Problem,
    #[arg(long, value_enum, default_value_t = MethodArg::Gram)]
    method: MethodArg,
    /// Also write the coefficient vectors
    #[arg(long)]
    vectors: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Check {
    Decay,
    Sandwich,
    Kernel,
    L2,
    Trace,
    Plunge,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
struct AnalyzeArgs {
    #[command(flatten)]
    problem: Problem,
    /// Comma-separated checks (default: every check whose hypotheses hold)
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<Check>,
    /// Plunge threshold in (0, 1/2)
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    /// Grid size for the kernel residual
    #[arg(long, default_value_t = 50)]
    grid: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Discrete,
    Continuous,
    Correction,
    Residual,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
struct KernelArgs {
    #[command(flatten)]
    problem: Problem,
    /// Points per axis on [0, omega)
    #[arg(long, default_value_t = 50)]
    grid: usize,
    /// Comma-separated kernels (default: all)
    #[arg(long, value_enum, value_delimiter = ',')]
    which: Vec<Which>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
struct InghamArgs {
    /// Length of the time window, > 1
    #[arg(long = "T")]
    t: f64,
    /// Comma-separated strictly increasing positive integers
    #[arg(long, value_delimiter = ',', conflicts_with = "n")]
    freqs: Vec<u64>,
    /// Use the frequencies 1..n when --freqs is absent
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<hprolate::Error> for CliError {
    fn from(e: hprolate::Error) -> Self {
        match e {
            hprolate::Error::InvalidOrder(_) | hprolate::Error::Domain { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let args = match config::merge(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Zeros(a) => commands::zeros(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Kernel(a) => commands::kernel(a),
        Command::Ingham(a) => commands::ingham(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
