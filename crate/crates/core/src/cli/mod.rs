//! `curiosity-order` command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or input error,
//! 3 I/O error. Data goes to files or stdout; progress and warnings go to
//! stderr.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diversity::{DEFAULT_M, DEFAULT_P};
use crate::ordering::DEFAULT_ETA;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "curiosity-order",
    version,
    about = "Minimum-similarity curriculum ordering and diversity scoring"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "CURIOSITY_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a curiosity order and write the reordered corpus.
    Order(OrderArgs),
    /// Score a dataset or the prefixes of an order.
    Score(ScoreArgs),
    /// Split an ordered corpus into k training stages.
    Partition(PartitionArgs),
    /// Run the self-contained validation suite.
    Validate(ValidateArgs),
    /// Compute the similarity matrix once and cache it as HAMSIM01.
    SimCache(SimCacheArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    /// JSON-Lines corpus.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Field holding the sample text. Default: "problem", then "text".
    #[arg(long)]
    pub text_field: Option<String>,
    /// Field holding the sample id.
    #[arg(long, default_value = "id")]
    pub id_field: String,
}

#[derive(Debug, Clone, Args)]
pub struct SimilarityArgs {
    /// HAMEMB01 embedding file.
    #[arg(long, conflicts_with = "sim")]
    pub embeddings: Option<PathBuf>,
    /// HAMSIM01 similarity cache.
    #[arg(long)]
    pub sim: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub similarity: SimilarityArgs,
    /// Order file to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Reordered JSON-Lines corpus to write (requires --corpus).
    #[arg(long)]
    pub out_corpus: Option<PathBuf>,
    /// Candidates considered at each greedy step.
    #[arg(long, default_value_t = DEFAULT_ETA)]
    pub eta: usize,
    /// Random restarts (default: min(n/2, 64)).
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long, default_value_t = 42, env = "CURIOSITY_SEED")]
    pub seed: u64,
    /// Solve exactly by dynamic programming (n <= 18).
    #[arg(long)]
    pub exact: bool,
    /// Score orders as cycles, adding the edge from last back to first.
    #[arg(long)]
    pub cycle: bool,
    /// Record the current time in the order metadata.
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Dcscore,
    Ngram,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long, value_enum, default_value_t = MetricArg::Dcscore)]
    pub metric: MetricArg,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub similarity: SimilarityArgs,
    /// Order file; prefixes follow this order.
    #[arg(long)]
    pub order: Option<PathBuf>,
    /// Size-adjustment exponent.
    #[arg(long, default_value_t = DEFAULT_P)]
    pub p: f64,
    /// Gram length for the ngram metric.
    #[arg(long, default_value_t = DEFAULT_M)]
    pub m: usize,
    /// Comma-separated prefix ratios in (0, 1].
    #[arg(long, value_delimiter = ',')]
    pub ratios: Option<Vec<f64>>,
    /// Write the prefix curve as CSV (ratio,n,raw,adjusted).
    #[arg(long, requires = "ratios")]
    pub csv: Option<PathBuf>,
    /// Do not lowercase tokens.
    #[arg(long)]
    pub case_sensitive: bool,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub similarity: SimilarityArgs,
    /// Order file to cut.
    #[arg(long)]
    pub order: Option<PathBuf>,
    /// Number of stages.
    #[arg(long)]
    pub k: usize,
    /// Directory for stage files and manifest.json.
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Size exponent for the per-stage DCScore.
    #[arg(long, default_value_t = DEFAULT_P)]
    pub p: f64,
    /// Pick each stage as the exact most diverse subset of what is left
    /// (n <= 20, needs a similarity source) instead of cutting the order.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Override the trial count of every randomized check.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 42, env = "CURIOSITY_SEED")]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimCacheArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match commands::dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
