//! `seqgamma`: simulation tables, second-order constants and real-data
//! analysis for sequential bounded-variance estimation under a gamma model.

mod commands;
mod presets;
mod render;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP_HIT: u8 = 3;
pub const EXIT_INPUT: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "seqgamma",
    version,
    about = "Sequential bounded-variance estimation for gamma scale functions"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Mean,
    Variance,
    Rate,
    Survival,
}

impl TargetArg {
    pub fn name(self) -> &'static str {
        match self {
            TargetArg::Mean => "mean",
            TargetArg::Variance => "variance",
            TargetArg::Rate => "rate",
            TargetArg::Survival => "survival",
        }
    }

    pub fn parse_name(name: &str) -> Option<Self> {
        <Self as ValueEnum>::from_str(name, true).ok()
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one table row.
    Simulate(SimulateArgs),
    /// Reproduce a full simulation table from the presets.
    Tables(TablesArgs),
    /// Second-order constant lim E[N - n*] for the mean or variance rule.
    Constant(ConstantArgs),
    /// Run the stopping rules over a column of normal observations.
    Analyze(AnalyzeArgs),
    /// Write the normal-gamma transform of a column.
    Transform(TransformArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub target: TargetArg,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    /// Survival threshold (survival target only).
    #[arg(long)]
    pub c: Option<f64>,
    /// Pilot sample size.
    #[arg(long)]
    pub m: u64,
    /// Variance bound.
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value_t = 10_000)]
    pub reps: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Safety limit on the terminal sample size.
    #[arg(long, default_value_t = seqgamma::engine::DEFAULT_CAP)]
    pub cap: u64,
    /// Include wall-clock time in JSON output.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long)]
    pub table: u32,
    #[arg(long, default_value_t = 10_000)]
    pub reps: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Override the preset pilot size.
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, default_value_t = seqgamma::engine::DEFAULT_CAP)]
    pub cap: u64,
    /// Presets file to use instead of the built-in one.
    #[arg(long)]
    pub presets: Option<PathBuf>,
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct ConstantArgs {
    #[arg(long, value_enum)]
    pub target: TargetArg,
    #[arg(long)]
    pub alpha: f64,
    /// Series terms below this magnitude are excluded.
    #[arg(long, default_value_t = seqgamma::second_order::DEFAULT_TRUNCATION_EPSILON)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Zero-based column index or header name.
    #[arg(long, default_value = "0")]
    pub column: String,
    /// The first row is a header (implied when --column is a name).
    #[arg(long)]
    pub has_header: bool,
    /// mean, variance, rate, survival or all.
    #[arg(long)]
    pub target: String,
    /// Pilot sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<u64>,
    /// Variance bounds, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<f64>,
    /// Survival threshold.
    #[arg(long)]
    pub c: Option<f64>,
    /// Drop zero transformed values instead of failing.
    #[arg(long)]
    pub drop_zeros: bool,
    #[arg(long)]
    pub presets: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "0")]
    pub column: String,
    #[arg(long)]
    pub has_header: bool,
    /// Destination file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<seqgamma::Error> for CliError {
    fn from(e: seqgamma::Error) -> Self {
        use seqgamma::Error as E;
        let code = match &e {
            E::Data(_) => EXIT_INPUT,
            e if e.is_input_error() => EXIT_INPUT,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// What a command produced: text for stdout and the exit status.
pub struct Output {
    pub text: String,
    pub code: u8,
    /// One-line diagnostic for a nonzero exit that still produced output.
    pub warning: Option<String>,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output {
            text,
            code: 0,
            warning: None,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SEQGAMMA_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::usage(format!(
                "SEQGAMMA_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::usage(format!("cannot start {threads} worker threads: {e}")))
}

fn run(cli: Cli) -> Result<Output, CliError> {
    configure_threads()?;
    let format = cli.format;
    match cli.command {
        Command::Simulate(args) => commands::simulate(&args, format),
        Command::Tables(args) => commands::tables(&args, format),
        Command::Constant(args) => commands::constant(&args, format),
        Command::Analyze(args) => commands::analyze(&args, format),
        Command::Transform(args) => commands::transform(&args, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            // keep the message paragraph, drop the usage and help hints
            let rendered = e.to_string();
            let detail: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            eprintln!("error: {}", detail.join(" ").trim_start_matches("error: "));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(output.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(EXIT_INPUT);
            }
            if let Some(warning) = output.warning {
                eprintln!("warning: {warning}");
            }
            ExitCode::from(output.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message.replace('\n', " "));
            ExitCode::from(e.code)
        }
    }
}
