//! The yearly simulation loop.

mod mix;
mod report;
mod world;

pub use mix::MixCategory;
pub use report::{write_funds_csv, write_mix_csv, FundsEntry, PricePoint, YearResult};
pub use world::{
    init_world, run, run_with, step_year, step_year_observed, DayObserver, PlantState, PlantStatus, World,
};

use crate::agents::AgentError;
use crate::ingest::IngestError;
use crate::market::MarketError;

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("year {year} is outside the scenario ({start}..={end})")]
    YearOutOfScenario { year: i32, start: i32, end: i32 },
    #[error("plant `{plant}` belongs to unknown genco `{owner}`")]
    UnknownOwner { plant: String, owner: String },
    #[error("duplicate plant id `{0}`")]
    DuplicatePlant(String),
    #[error("representative year has no days")]
    EmptyYear,
    #[error(transparent)]
    Market(#[from] MarketError),
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Observer(String),
}
