//! Command-line interface. Every command prints one JSON [`RunReport`] on
//! stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 on success, 1 on usage or I/O errors, 2 when a measure is
//! undefined for the given inputs.

mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::harness::{PerturbKind, DEFAULT_MAX_OFFSET};
use crate::measures::{DEFAULT_GRID, DEFAULT_RESOLUTION};

pub use report::{round_floats, round_sig9, ErrorPayload, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "layout-metrics",
    version,
    about = "Layout similarity measures and evaluation harness"
)]
pub struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare layouts pairwise with one measure.
    Compare(CompareArgs),
    /// Compare a generated collection against a real one.
    Eval(EvalArgs),
    /// Write a noisy copy of a collection.
    Perturb(PerturbArgs),
    /// Rank a collection by similarity to one of its layouts.
    Retrieve(RetrieveArgs),
    /// Kendall rank correlation between measures over layout pairs.
    Rankcorr(RankcorrArgs),
    /// Overlap and alignment scores of a collection.
    Principles(PrinciplesArgs),
}

#[derive(Debug, Clone, Args)]
pub struct MeasureFlags {
    /// LTSim scaling parameter.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// MeanIoU raster cells per side.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// DocEMD sampling points per side.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VocabFlag {
    /// Vocabulary file (JSON array of category names). Without it, category
    /// ids are accepted up to the largest one present.
    #[arg(long)]
    pub vocab: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// ltsim, ltsim-emd, docsim, maxiou-beta, meaniou or docemd.
    #[arg(long)]
    pub measure: String,
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[command(flatten)]
    pub params: MeasureFlags,
    #[command(flatten)]
    pub vocab: VocabFlag,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// ltsim-mmd or maxiou.
    #[arg(long)]
    pub measure: String,
    #[arg(long)]
    pub real: PathBuf,
    #[arg(long)]
    pub gen: PathBuf,
    /// Kernel bandwidth: "auto" (median real-pair EMD) or a positive number.
    #[arg(long, default_value = "auto")]
    pub sigma: String,
    /// Worker threads for the pairwise engine.
    #[arg(long, env = "LAYOUT_METRICS_WORKERS")]
    pub workers: Option<usize>,
    /// Write the joint (real then generated) EMD matrix here, with a JSON
    /// sidecar at `<path>.json`.
    #[arg(long)]
    pub save_matrix: Option<PathBuf>,
    /// Accumulate kernel sums without storing the generated blocks.
    #[arg(long, conflicts_with = "save_matrix")]
    pub streaming: bool,
    /// Externally computed FID, echoed in the results for display only.
    #[arg(long)]
    pub report_fid: Option<f64>,
    #[command(flatten)]
    pub vocab: VocabFlag,
}

#[derive(Debug, Clone, Args)]
pub struct PerturbArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub rate: f64,
    /// pos or label.
    #[arg(long, value_parser = parse_kind)]
    pub kind: PerturbKind,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Largest per-axis shift for positional noise.
    #[arg(long, default_value_t = DEFAULT_MAX_OFFSET)]
    pub max_offset: f64,
    #[command(flatten)]
    pub vocab: VocabFlag,
}

#[derive(Debug, Clone, Args)]
pub struct RetrieveArgs {
    #[arg(long)]
    pub query_id: String,
    #[arg(long)]
    pub collection: PathBuf,
    #[arg(long)]
    pub measure: String,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub params: MeasureFlags,
    #[command(flatten)]
    pub vocab: VocabFlag,
}

#[derive(Debug, Clone, Args)]
pub struct RankcorrArgs {
    /// JSONL with `{"id": ..., "a": [elements], "b": [elements]}` per line.
    #[arg(long)]
    pub pairs: PathBuf,
    /// Comma-separated measure names.
    #[arg(long, value_delimiter = ',')]
    pub measures: Vec<String>,
    #[command(flatten)]
    pub params: MeasureFlags,
    #[command(flatten)]
    pub vocab: VocabFlag,
}

#[derive(Debug, Clone, Args)]
pub struct PrinciplesArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Real collection whose scores are reported alongside as a baseline.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
    #[command(flatten)]
    pub vocab: VocabFlag,
}

fn parse_kind(s: &str) -> Result<PerturbKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of one invocation: what to print and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn parse<I, T>(args: I) -> Result<(Cli, Vec<String>), Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    match Cli::try_parse_from(&argv) {
        Ok(cli) => Ok((
            cli,
            argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        )),
        Err(e) => {
            let text = e.render().to_string();
            Err(if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                // --help and --version
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            })
        }
    }
}

/// Parses `args` (program name first) and runs the command without touching
/// the process streams.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse(args) {
        Ok((cli, argv)) => commands::dispatch(cli.command, argv),
        Err(outcome) => outcome,
    }
}

/// Entry point of the binary: runs on the process arguments, prints the
/// outcome and returns the exit code.
pub fn run() -> i32 {
    let outcome = match parse(std::env::args_os()) {
        Ok((cli, argv)) => {
            let level = match cli.verbose {
                0 => log::LevelFilter::Warn,
                1 => log::LevelFilter::Info,
                _ => log::LevelFilter::Debug,
            };
            env_logger::Builder::new()
                .filter_level(level)
                .parse_default_env()
                .target(env_logger::Target::Stderr)
                .init();
            commands::dispatch(cli.command, argv)
        }
        Err(outcome) => outcome,
    };
    if !outcome.stdout.is_empty() {
        let _ = writeln!(std::io::stdout().lock(), "{}", outcome.stdout.trim_end());
    }
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr.trim_end());
    }
    outcome.code
}
