//! Loading and validation of external data: hourly weather/demand series,
//! plant cost tables, plant registries and scenario configuration.

mod costs;
mod plant;
mod registry;
mod scenario;
mod series;

pub use costs::{
    lookup_plant_costs, CostKey, CostRow, CostTable, PlantCosts, ResolvedCosts, Resolution,
    BUNDLED_COST_TABLE,
};
pub use plant::{Fuel, PlantType, PowerPlant};
pub use registry::{load_plant_registry, parse_plant_registry};
pub use scenario::{GenCoSpec, Retirement, ScenarioConfig};
pub use series::{load_hourly_series, LoadReport, Series, TimeSeriesSet, HOURS_PER_DAY};

use std::path::PathBuf;

/// Errors raised while reading or validating input data.
#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("{rejected} of {total} rows rejected (more than 1%); first problem: {first}")]
    TooManyRejected {
        rejected: usize,
        total: usize,
        first: String,
    },
    #[error("no complete days in input")]
    NoCompleteDays,
    #[error("malformed year cell `{0}`")]
    MalformedYear(String),
    #[error("duplicate cost row for {0}")]
    DuplicateCostRow(CostKey),
    #[error("invalid cost row for {key}: {message}")]
    InvalidCosts { key: CostKey, message: String },
    #[error("unknown plant type `{0}`")]
    UnknownPlantType(String),
    #[error("no cost rows for plant type {0}")]
    NoCostsForType(PlantType),
    #[error("plant `{plant}` references unknown owner `{owner}`")]
    DanglingOwner { plant: String, owner: String },
    #[error("duplicate plant id `{0}`")]
    DuplicatePlant(String),
    #[error("scenario: {0}")]
    Scenario(String),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String, IngestError> {
    std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a numeric cell, tolerating thousands separators and surrounding whitespace.
pub(crate) fn parse_number(cell: &str) -> Option<f64> {
    let cleaned: String = cell.trim().chars().filter(|c| *c != ',').collect();
    let v: f64 = cleaned.parse().ok()?;
    v.is_finite().then_some(v)
}
