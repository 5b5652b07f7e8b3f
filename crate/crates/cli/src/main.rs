//! `grover-gme`: GME curves, turning points, scale-invariance sweeps and
//! overlap profiles of Grover search, written as CSV or JSON.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grover_gme::GmeError;

#[derive(Parser)]
#[command(version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// GME at every iteration k = 0..=k_opt
    Curve {
        #[command(flatten)]
        marked: MarkedArgs,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Turning angle, turning ratio, B_max and asymptotic peak GME
    Turning {
        #[command(flatten)]
        marked: MarkedArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// B_max and turning point for each n of a preset family
    Sweep {
        /// product | ghz | w | dicke:<w>
        #[arg(long)]
        preset: String,
        /// Inclusive qubit range, e.g. 15..30
        #[arg(long, value_parser = parse_range)]
        n_range: (u32, u32),
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A(α), B(α) and g(α) = A + B at α = iπ/grid, i = 0..grid
    Profile {
        #[command(flatten)]
        marked: MarkedArgs,
        /// Number of grid points covering [0, π)
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MarkedSpec {
    /// product | ghz | w | dicke:<w>
    #[arg(long)]
    preset: Option<String>,
    /// Hamming weight of each marked state, `w` or `w:count`, comma separated
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<String>>,
    /// Marked basis states as bitstrings, most significant qubit first
    #[arg(long, value_delimiter = ',')]
    bits: Option<Vec<String>>,
}

#[derive(Args)]
struct MarkedArgs {
    /// Number of qubits
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    spec: MarkedSpec,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Asymptotic,
    Both,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a == 0 || a > b {
        return Err(format!("empty or invalid qubit range {s:?}"));
    }
    Ok((a, b))
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Io(String),
    Resource(String),
}

impl From<GmeError> for CliError {
    fn from(e: GmeError) -> Self {
        match e {
            GmeError::Resource(_) => CliError::Resource(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) | CliError::Io(m) | CliError::Resource(m) => f.write_str(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Curve { marked, mode, output } => commands::curve(&marked, mode, &output),
        Command::Turning { marked, output } => commands::turning(&marked, &output),
        Command::Sweep { preset, n_range, output } => commands::sweep(&preset, n_range, &output),
        Command::Profile { marked, grid, output } => commands::profile(&marked, grid, &output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
