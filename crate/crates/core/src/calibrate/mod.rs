//! Genetic-algorithm calibration of price expectations against a target mix.

mod forecast;
mod ga;
mod layout;
mod objective;

pub use forecast::{forecast_error_metrics, forecast_errors_by_type, ForecastErrors};
pub use ga::{ga_run, CsvGenerationLog, GaConfig, GaResult, GenerationSink, GenerationStats, Individual, NullSink};
pub use layout::{Decoded, GenomeLayout};
pub use objective::{
    load_trajectory, mix_error_longterm, mix_error_validation, objective_longterm,
    objective_validation, parse_trajectory, simulate_genome, Mix, ScenarioBundle, Trajectory,
};

use crate::engine::{EngineError, MixCategory};

#[derive(Debug, thiserror::Error)]
pub enum CalibrateError {
    #[error("invalid GA configuration: {0}")]
    Config(String),
    #[error("genome has {got} genes, layout expects {expected}")]
    GenomeLength { expected: usize, got: usize },
    #[error("mix lacks `{0}`")]
    MissingCategory(MixCategory),
    #[error("trajectories cover different years: {0}")]
    YearMismatch(String),
    #[error("trajectory: {0}")]
    Trajectory(String),
    #[error("cannot write generation log")]
    Sink(#[source] std::io::Error),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("cannot read {path}")]
    Io { path: std::path::PathBuf, source: std::io::Error },
    #[error(transparent)]
    Engine(#[from] EngineError),
}
