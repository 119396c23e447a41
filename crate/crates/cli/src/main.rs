//! `avgdist`: spherical means of log ||A u||, from matrices or spectra.
//!
//! One JSON document on stdout; diagnostics as `{"error": ...}` on stderr.
//! Exit codes: 0 success, 2 parse/validation error, 3 numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use avgdist::{McConfig, McMode, QuadConfig};
use avgdist_cli::input::{sigma_source, InputSource, SourceFormat};
use avgdist_cli::{run_compute, run_constants, run_lln, CliError, ComputeRequest, Method};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "avgdist", version, about = "Spherical mean of log ||A u|| with sharp bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the mean of log ||A u|| over the unit sphere, with bounds.
    Compute(ComputeArgs),
    /// Exact constants for dimension n (digamma, lower-bound constants, areas).
    Constants(ConstantsArgs),
    /// Law-of-large-numbers scan over prefixes of a sigma sequence file.
    Lln(LlnArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true))]
struct ComputeArgs {
    /// Square matrix file (CSV rows, or JSON {"matrix": [[...]]}).
    #[arg(long, group = "source", value_name = "PATH")]
    matrix: Option<PathBuf>,

    /// Inline comma-separated singular values, or a file path.
    #[arg(long, group = "source", value_name = "LIST-or-PATH")]
    sigmas: Option<String>,

    /// Estimator: Monte Carlo, quadrature, or closed form when available.
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,

    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,

    /// Monte Carlo seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Monte Carlo mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Projection)]
    mode: ModeArg,

    /// Quadrature absolute tolerance, in (0, 1e-2].
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,

    /// Override file-format detection by extension.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Ambient dimension, n >= 1.
    n: usize,
}

#[derive(Args)]
struct LlnArgs {
    /// Sigma sequence file, one positive value per line (or {"sigmas": [...]}).
    #[arg(long, value_name = "PATH")]
    sigmas: PathBuf,

    /// Prefix dimensions to scan, strictly increasing, each at least 2.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,

    /// Quadrature absolute tolerance for the deviations.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,

    /// Override file-format detection by extension.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Mc,
    Quad,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Projection,
    Reduction,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for SourceFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => SourceFormat::Csv,
            FormatArg::Json => SourceFormat::Json,
        }
    }
}

fn emit_error(message: &str) {
    eprintln!("{}", serde_json::json!({ "error": message }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            emit_error("missing subcommand (compute, constants, lln); see --help");
            return ExitCode::from(2);
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first_line = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
            emit_error(first_line.trim());
            return ExitCode::from(2);
        }
    };

    let result = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Constants(args) => run_constants(args.n),
        Command::Lln(args) => run_lln(
            &args.sigmas,
            args.format.map(Into::into),
            &args.dims,
            &QuadConfig {
                abs_tol: args.tol,
                ..QuadConfig::default()
            },
        ),
    };

    match result {
        Ok(doc) => {
            println!("{doc}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit_error(e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn compute(args: ComputeArgs) -> Result<serde_json::Value, CliError> {
    let format = args.format.map(Into::into);
    let source = match (&args.matrix, &args.sigmas) {
        (Some(path), None) => InputSource::MatrixFile {
            path: path.clone(),
            format,
        },
        (None, Some(list)) => sigma_source(list, format),
        _ => unreachable!("clap enforces exactly one source"),
    };
    let request = ComputeRequest {
        source,
        method: match args.method {
            MethodArg::Mc => Method::Mc,
            MethodArg::Quad => Method::Quad,
            MethodArg::Auto => Method::Auto,
        },
        mc: McConfig {
            samples: args.samples,
            seed: args.seed,
            mode: match args.mode {
                ModeArg::Projection => McMode::Projection,
                ModeArg::Reduction => McMode::GaussianReduction,
            },
        },
        quad: QuadConfig {
            abs_tol: args.tol,
            ..QuadConfig::default()
        },
    };
    run_compute(&request)
}
