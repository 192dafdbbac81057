use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tcl_core::io::IngestOptions;
use tcl_core::stats::HopSources;

#[derive(Debug, Parser)]
#[command(
    name = "tcl",
    version,
    about = "Fit and generate Transitive Chung-Lu graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Master seed; per-component streams are derived from it.
    #[arg(long, global = true, env = "TCL_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Zero every wall-clock field in the report.
    #[arg(long, global = true)]
    pub no_timings: bool,

    #[command(flatten)]
    pub ingest: IngestArgs,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct IngestArgs {
    /// Treat input as directed and symmetrize it.
    #[arg(long, global = true)]
    pub reflect: bool,

    /// Remove nodes whose degree exceeds this, once, after symmetrization.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree_cap: Option<u64>,

    #[arg(long, global = true, default_value_t = '#')]
    pub comment_prefix: char,
}

impl IngestArgs {
    pub fn options(&self) -> IngestOptions {
        IngestOptions {
            reflect: self.reflect,
            degree_cap: self.degree_cap.map(|c| c as usize),
            comment_prefix: self.comment_prefix,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate rho by EM.
    Fit(FitArgs),
    /// Generate a synthetic graph from a seed graph.
    Generate(GenerateArgs),
    /// Degree and clustering CCDFs, hop plot and global clustering.
    Stats(StatsArgs),
    /// Distances between the statistics of two graphs.
    Compare(CompareArgs),
    /// Monte-Carlo checks of the generators against their analytic targets.
    Verify(VerifyArgs),
    /// Generation wall time as the graph is replicated 1..=k times.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EmArgs {
    /// Edges sampled per EM iteration.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 100)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 0.5)]
    pub rho_init: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FitArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub em: EmArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenerateArgs {
    pub input: PathBuf,
    /// Transitivity parameter, or `auto` to fit it first.
    #[arg(long)]
    pub rho: RhoArg,
    /// Replacement steps after warmup (default: M).
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long, value_enum, default_value_t = Model::Tcl)]
    pub model: Model,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
    #[command(flatten)]
    pub em: EmArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StatsOpts {
    /// BFS sources for the hop plot: a count or `all`.
    #[arg(long)]
    pub hop_sources: Option<HopArg>,
    /// Count degree-1 nodes (coefficient 0) in the clustering CCDF.
    #[arg(long)]
    pub cc_include_deg1: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StatsArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub opts: StatsOpts,
    /// Also write each series as two-column CSV into this directory.
    #[arg(long, value_name = "DIR")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[command(flatten)]
    pub opts: StatsOpts,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    pub input: PathBuf,
    /// Generated graphs per check.
    #[arg(long, default_value_t = 200)]
    pub runs: usize,
    /// Watch the edges of this many highest-degree nodes.
    #[arg(long, default_value_t = 10)]
    pub top: usize,
    /// Two-hop walks per generated graph.
    #[arg(long, default_value_t = 2_000)]
    pub walks: usize,
    /// Also check TCL retry ratios at this rho.
    #[arg(long)]
    pub rho: Option<RhoArg>,
    #[command(flatten)]
    pub em: EmArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BenchArgs {
    pub input: PathBuf,
    /// Largest replication factor k.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub scale: u64,
    /// Replicate the input this many times before scaling.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub base_copies: u64,
    /// Timed repetitions per scale; the median is reported.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub repeats: u64,
    #[arg(long, default_value = "auto")]
    pub rho: RhoArg,
    #[arg(long, value_enum, default_value_t = Model::Tcl)]
    pub model: Model,
    #[command(flatten)]
    pub em: EmArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Tcl,
    Cl,
    ClUncorrected,
    ClSlow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhoArg {
    Auto,
    Value(f64),
}

impl FromStr for RhoArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(RhoArg::Auto);
        }
        match s.parse::<f64>() {
            Ok(v) if (0.0..=1.0).contains(&v) => Ok(RhoArg::Value(v)),
            Ok(v) => Err(format!("rho must lie in [0, 1], got {v}")),
            Err(_) => Err(format!("expected a number in [0, 1] or `auto`, got `{s}`")),
        }
    }
}

impl fmt::Display for RhoArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoArg::Auto => f.write_str("auto"),
            RhoArg::Value(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for RhoArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RhoArg::Auto => s.serialize_str("auto"),
            RhoArg::Value(v) => s.serialize_f64(*v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopArg {
    All,
    Count(usize),
}

impl HopArg {
    pub fn sources(self) -> HopSources {
        match self {
            HopArg::All => HopSources::All,
            HopArg::Count(k) => HopSources::Sample(k),
        }
    }
}

impl FromStr for HopArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(HopArg::All);
        }
        match s.parse::<usize>() {
            Ok(0) => Err("hop sources must be >= 1".into()),
            Ok(k) => Ok(HopArg::Count(k)),
            Err(_) => Err(format!("expected a count or `all`, got `{s}`")),
        }
    }
}

impl Serialize for HopArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            HopArg::All => s.serialize_str("all"),
            HopArg::Count(k) => s.serialize_u64(*k as u64),
        }
    }
}
