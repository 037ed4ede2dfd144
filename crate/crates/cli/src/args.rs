use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use marketsim_core::repdays::{Init, Normalization, SelectionMethod};
use serde::{Serialize, Serializer};

#[derive(Debug, Parser)]
#[command(name = "marketsim", version, about = "Agent-based electricity market simulation", arg_required_else_help = true)]
pub struct Cli {
    /// Log verbosity.
    #[arg(long, global = true, value_enum, default_value_t = LogLevel::Info)]
    pub log_level: LogLevel,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster an hourly dataset into weighted representative days.
    Repdays(RepdaysArgs),
    /// Run the market simulation over the scenario horizon.
    Simulate(SimulateArgs),
    /// Fit price-curve parameters to a target generation mix.
    Calibrate(CalibrateArgs),
    /// Forecast errors of a simulated mix trajectory against observations.
    Metrics(MetricsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LogLevel {
    Error,
    Warn,
    Info,
    Debug,
}

impl From<LogLevel> for log::LevelFilter {
    fn from(l: LogLevel) -> Self {
        match l {
            LogLevel::Error => log::LevelFilter::Error,
            LogLevel::Warn => log::LevelFilter::Warn,
            LogLevel::Info => log::LevelFilter::Info,
            LogLevel::Debug => log::LevelFilter::Debug,
        }
    }
}

fn display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn display_all<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Debug, Args, Serialize)]
pub struct RepdaysArgs {
    /// Hourly CSV with timestamp, demand_mw, solar_cf, onshore_cf, offshore_cf.
    #[arg(long)]
    pub input: PathBuf,
    /// Number of representative days to emit.
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    /// How each cluster is represented: medoid or centroid.
    #[arg(long, default_value = "medoid")]
    #[serde(serialize_with = "display")]
    pub method: SelectionMethod,
    /// Cluster counts scored in metrics.csv (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16")]
    pub sweep: Vec<usize>,
    /// Methods scored in metrics.csv (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "medoid,centroid")]
    #[serde(serialize_with = "display_all")]
    pub sweep_methods: Vec<SelectionMethod>,
    /// Feature scaling before clustering: zscore, minmax or none.
    #[arg(long, default_value = "zscore")]
    #[serde(serialize_with = "display")]
    pub normalization: Normalization,
    /// Centroid seeding: plusplus or forgy.
    #[arg(long, default_value = "plusplus")]
    #[serde(serialize_with = "display")]
    pub init: Init,
    #[arg(long, default_value_t = 300)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Threads for the k sweep (default: available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

/// Files describing the system being simulated.
#[derive(Debug, Args, Serialize)]
pub struct SystemInputs {
    /// Scenario TOML.
    #[arg(long)]
    pub scenario: PathBuf,
    /// Plant registry CSV: plant_id, owner_id, type, capacity_mw, construction_year.
    #[arg(long)]
    pub registry: PathBuf,
    /// Representative days CSV as written by `repdays`.
    #[arg(long)]
    pub repdays: PathBuf,
    /// Plant cost table CSV (default: the bundled table).
    #[arg(long)]
    pub costs: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemInputs,
    /// Root seed for belief sampling (default: the scenario's rng_seed).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Years to simulate after the first (default: through the scenario's end year).
    #[arg(long)]
    pub horizon: Option<u32>,
    /// Also write every clearing to dispatch.csv.
    #[arg(long)]
    pub dispatch_log: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Single price curve scored on the final simulated year.
    Validation,
    /// One curve per year plus belief noise and nuclear subsidy, scored on every year.
    Longterm,
}

#[derive(Debug, Args, Serialize)]
pub struct CalibrateArgs {
    #[arg(value_enum)]
    pub mode: Mode,
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemInputs,
    /// Target mix CSV: year, type, share.
    #[arg(long)]
    pub target: PathBuf,
    #[arg(long, default_value_t = 120)]
    pub pop: usize,
    #[arg(long, default_value_t = 0.5)]
    pub cxpb: f64,
    #[arg(long, default_value_t = 0.2)]
    pub mutpb: f64,
    #[arg(long, default_value_t = 100)]
    pub gens: usize,
    /// Stop after this many generations without improvement (0 disables).
    #[arg(long, default_value_t = 20)]
    pub stall: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Parallel fitness evaluations (default: available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
    /// First year with its own price curve (long-term; default: scenario start).
    #[arg(long)]
    pub first_year: Option<i32>,
    /// Number of yearly price curves (long-term).
    #[arg(long, default_value_t = 17)]
    pub curves: usize,
    /// Leave the initial year out of the long-term objective.
    #[arg(long)]
    pub exclude_first_year: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct MetricsArgs {
    /// Simulated trajectory CSV with year, type, share columns (e.g. mix_by_year.csv).
    #[arg(long)]
    pub simulated: PathBuf,
    /// Observed trajectory CSV with year, type, share columns.
    #[arg(long)]
    pub observed: PathBuf,
    /// Year whose observed mix serves as the naive forecast.
    #[arg(long)]
    pub baseline_year: i32,
    #[arg(long)]
    pub out: PathBuf,
}

/// Resolves `--workers`, defaulting to the machine's parallelism.
pub fn workers(requested: Option<usize>) -> anyhow::Result<usize> {
    match requested {
        Some(0) => anyhow::bail!("--workers must be at least 1"),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}
