//! `husr` command line: mine, verify, bench and gen.

mod commands;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use husr_core::{MinConfidence, StrategyConfig};

pub use verify::{verify_with, Divergence, VerifyError, VerifyOutcome};

#[derive(Debug, Parser)]
#[command(name = "husr", version, about = "High-utility sequential rule mining")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine rules from a database and write them to a file.
    Mine(MineArgs),
    /// Compare every preset against brute-force enumeration.
    Verify(VerifyArgs),
    /// Run presets over a list of thresholds and print one stats row each.
    Bench(BenchArgs),
    /// Generate a synthetic database.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Sequence file.
    #[arg(long)]
    pub input: PathBuf,
    /// External utility file.
    #[arg(long)]
    pub utilities: PathBuf,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub data: InputArgs,
    #[arg(long, value_parser = positive)]
    pub minutil: u64,
    #[arg(long)]
    pub minconf: MinConfidence,
    /// baseline, v1, v2, v3, v4 or custom:<flag,...>
    #[arg(long, default_value = "v4")]
    pub strategy: StrategyConfig,
    #[arg(long)]
    pub output: PathBuf,
    /// Write run statistics as key=value lines.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub data: InputArgs,
    #[arg(long, value_parser = positive)]
    pub minutil: u64,
    #[arg(long)]
    pub minconf: MinConfidence,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub data: InputArgs,
    /// Comma-separated thresholds, run in the given order.
    #[arg(long, value_delimiter = ',', required = true, value_parser = positive)]
    pub minutil_list: Vec<u64>,
    #[arg(long)]
    pub minconf: MinConfidence,
    #[arg(long, value_delimiter = ',', default_value = "baseline,v1,v2,v3,v4")]
    pub strategies: Vec<StrategyConfig>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub num_sequences: usize,
    #[arg(long)]
    pub alphabet: u32,
    #[arg(long, default_value_t = 4.0)]
    pub mean_itemsets: f64,
    #[arg(long, default_value_t = 2.0)]
    pub mean_items: f64,
    #[arg(long, default_value_t = 5)]
    pub max_quantity: u32,
    #[arg(long, default_value_t = 10)]
    pub max_utility: u32,
    /// Popularity exponent of item draws; 0 is uniform.
    #[arg(long, default_value_t = 0.0)]
    pub item_skew: f64,
    /// Number of planted sequential patterns; 0 draws noise only.
    #[arg(long, default_value_t = 0)]
    pub patterns: usize,
    #[arg(long, default_value_t = 2.0)]
    pub pattern_itemsets: f64,
    #[arg(long, default_value_t = 1.5)]
    pub pattern_items: f64,
    /// Average number of patterns embedded per sequence.
    #[arg(long, default_value_t = 1.0)]
    pub patterns_per_sequence: f64,
    /// Probability of dropping a pattern item when embedding it.
    #[arg(long, default_value_t = 0.25)]
    pub corruption: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sequence file to write.
    #[arg(long)]
    pub output: PathBuf,
    /// Utility file to write.
    #[arg(long)]
    pub utilities_output: PathBuf,
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIVERGENCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}
