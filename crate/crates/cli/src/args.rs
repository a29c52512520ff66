use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use npcorr::CorrelationKind;

#[derive(Debug, Parser)]
#[command(name = "npcorr", version, about = "Online Spearman and Kendall tau-b correlation for data streams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream observations through the count-matrix estimator.
    Run(RunArgs),
    /// Recompute exact correlations from scratch at every emission point.
    Batch(RunArgs),
    /// Time online and batch runs over simulated streams.
    Bench(BenchArgs),
    /// Write a simulated stream as `x,y` CSV rows.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    All,
    Window,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DesignArg {
    Sim1,
    Sim2,
}

#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    /// Simulate a constant-correlation stream instead of reading CSV.
    #[arg(long, conflicts_with = "sim2")]
    pub sim1: bool,
    /// Simulate a stream whose correlation dips to zero mid-way.
    #[arg(long)]
    pub sim2: bool,
    /// Mixing weight for --sim1; correlation is sigma / sqrt(sigma^2 + 1).
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Number of simulated observations.
    #[arg(long = "T", default_value_t = 10_000)]
    pub len: u64,
    /// Midpoint for --sim2 (0 means T / 2).
    #[arg(long, default_value_t = 0)]
    pub m: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Input CSV; standard input when omitted or `-`.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// 0-based column holding x.
    #[arg(long, default_value_t = 0)]
    pub x_col: usize,
    /// 0-based column holding y.
    #[arg(long, default_value_t = 1)]
    pub y_col: usize,
    /// Skip the first input row.
    #[arg(long)]
    pub header: bool,
    /// Count and skip malformed rows instead of failing.
    #[arg(long)]
    pub skip_bad_rows: bool,

    #[command(flatten)]
    pub sim: SimArgs,

    /// Explicit x cutpoints, comma-separated and strictly increasing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub cuts_x: Option<Vec<f64>>,
    /// Explicit y cutpoints, comma-separated and strictly increasing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub cuts_y: Option<Vec<f64>>,
    /// K standard-normal quantile cutpoints per axis.
    #[arg(long, conflicts_with_all = ["cuts_empirical", "cuts_unique"])]
    pub cuts_normal: Option<usize>,
    /// K sample-quantile cutpoints per axis, estimated from the warm-up rows.
    #[arg(long, conflicts_with = "cuts_unique")]
    pub cuts_empirical: Option<usize>,
    /// One cell per distinct value seen in the warm-up rows.
    #[arg(long)]
    pub cuts_unique: bool,
    /// Rows buffered to estimate data-driven cutpoints (default: all input).
    #[arg(long)]
    pub warmup: Option<usize>,

    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    pub mode: ModeArg,
    /// Sliding window length in observations (with --mode window).
    #[arg(long)]
    pub window: Option<usize>,
    /// Emit estimates every N accepted observations.
    #[arg(long, default_value_t = 1)]
    pub ngap: u64,
    /// Correlations to report: spearman, kendall, pearson.
    #[arg(long, value_delimiter = ',', default_value = "spearman,kendall")]
    pub kinds: Vec<CorrelationKind>,

    /// Output CSV; standard output when omitted or `-`.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Text written for undefined estimates.
    #[arg(long, default_value = "NA")]
    pub na: String,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = DesignArg::Sim1)]
    pub design: DesignArg,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Midpoint for sim2 (0 means T / 2).
    #[arg(long, default_value_t = 0)]
    pub m: u64,
    /// Stream lengths to sweep.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000")]
    pub t_values: Vec<u64>,
    /// Normal-quantile cutpoint counts to sweep.
    #[arg(long, value_delimiter = ',', default_value = "10,20,50")]
    pub cutpoints: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,100")]
    pub ngaps: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "spearman,kendall")]
    pub kinds: Vec<CorrelationKind>,
    /// Replications per setting; seeds run from --seed upward.
    #[arg(long, default_value_t = 10)]
    pub reps: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Sliding window length; all past observations when omitted.
    #[arg(long)]
    pub window: Option<usize>,
    /// Skip batch timing for streams longer than this.
    #[arg(long, default_value_t = 2_000)]
    pub batch_max_t: u64,
    /// Run replications concurrently (timings then share cores).
    #[arg(long)]
    pub parallel: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub sim: SimArgs,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
