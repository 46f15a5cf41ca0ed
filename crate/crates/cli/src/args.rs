use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "spancore", version, about = "Span-core mining for temporal graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", content = "config", rename_all = "lowercase")]
pub enum Command {
    /// Compute every span-core of a contact log.
    Decompose(DecomposeArgs),
    /// Compute only the maximal span-cores of a contact log.
    Maximal(MaximalArgs),
    /// Count and mean size of cores by order and by span length.
    Stats(StatsArgs),
    /// Largest order per (start, span length) cell.
    Grid(GridArgs),
    /// Mean categorical purity of the cores spanning each timestamp.
    Purity(PurityArgs),
    /// Degree-preserving per-timestamp reshuffle of a contact log.
    Shuffle(ShuffleArgs),
    /// Remove contacts of vertices in anomalously long maximal cores.
    Anomaly(AnomalyArgs),
    /// Re-run the command recorded in a run manifest.
    #[serde(skip)]
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GraphInput {
    /// Contact file: one `u v t` per line.
    #[arg(long)]
    pub input: PathBuf,
    /// Raw time units per discrete timestamp.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub window: u64,
    /// Raw time of timestamp 0 (default: earliest contact).
    #[arg(long)]
    pub origin: Option<u64>,
    /// Abort on malformed lines instead of skipping them.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FullEngine {
    Naive,
    Pruned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaximalEngine {
    Filter,
    Direct,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, value_enum, default_value_t = FullEngine::Pruned)]
    pub engine: FullEngine,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write bench.json (time, peak memory, processed vertices).
    #[arg(long)]
    pub bench: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct MaximalArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, value_enum, default_value_t = MaximalEngine::Direct)]
    pub engine: MaximalEngine,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub bench: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CoreInput {
    /// Core file written by `decompose` or `maximal`.
    #[arg(long)]
    pub input: PathBuf,
    /// Core file format (default: from the extension).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct StatsArgs {
    #[command(flatten)]
    pub cores: CoreInput,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GridArgs {
    #[command(flatten)]
    pub cores: CoreInput,
    /// Leave out cores spanning fewer timestamps.
    #[arg(long, default_value_t = 1)]
    pub min_span: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PurityArgs {
    #[command(flatten)]
    pub cores: CoreInput,
    /// CSV `label,attr1,attr2,...` with a header row.
    #[arg(long)]
    pub attributes: PathBuf,
    #[arg(long)]
    pub attribute: String,
    /// Last timestamp of the curve (default: latest core end).
    #[arg(long)]
    pub horizon: Option<u32>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ShuffleArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AnomalyArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    /// Spans longer than this many timestamps are anomalous.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub tr: u32,
    /// Drop timestamps whose original/filtered contact ratio exceeds this.
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Ground-truth positive timestamps, one integer per line.
    #[arg(long)]
    pub positives: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output directory (default: the one recorded in the manifest).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Command {
    pub fn out_mut(&mut self) -> Option<&mut PathBuf> {
        match self {
            Command::Decompose(a) => Some(&mut a.out),
            Command::Maximal(a) => Some(&mut a.out),
            Command::Stats(a) => Some(&mut a.out),
            Command::Grid(a) => Some(&mut a.out),
            Command::Purity(a) => Some(&mut a.out),
            Command::Shuffle(a) => Some(&mut a.out),
            Command::Anomaly(a) => Some(&mut a.out),
            Command::Replay(_) => None,
        }
    }
}
