//! Uniform-price merit-order clearing of hourly demand against generator bids.

mod clearing;
mod day;
mod srmc;

pub use clearing::{clear_market, Bid, ClearingResult};
pub use day::{dispatch_day, DayDispatch, DispatchLog, Generator, Output};
pub use srmc::srmc;

use crate::ingest::{Fuel, PlantType};

#[derive(Debug, thiserror::Error)]
pub enum MarketError {
    #[error("demand {0} MW is negative or not finite")]
    InvalidDemand(f64),
    #[error("bid from `{plant_id}`: {reason}")]
    InvalidBid { plant_id: String, reason: String },
    #[error("no {fuel} price for {plant_type} plant")]
    MissingFuelPrice { plant_type: PlantType, fuel: Fuel },
    #[error("{plant_type} plant burns fuel but has efficiency {efficiency}")]
    InvalidEfficiency { plant_type: PlantType, efficiency: f64 },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
