//! Agent-based electricity market simulation.
//!
//! The crate is organised as a pipeline:
//!
//! - [`ingest`] loads hourly series, cost tables, plant registries and scenarios.
//! - [`repdays`] reduces years of hourly data to a few weighted representative days.
//! - [`market`] clears each representative hour in merit order at a uniform price.
//! - [`agents`] appraises investments by NPV against predicted price curves.
//! - [`engine`] runs the yearly loop of retirement, dispatch, settlement and investment.
//! - [`calibrate`] fits the price-curve parameters with a genetic algorithm.

// Hour-by-hour loops index several parallel arrays at once.
#![allow(clippy::needless_range_loop)]

pub mod agents;
pub mod calibrate;
pub mod engine;
pub mod ingest;
pub mod market;
pub mod repdays;
pub mod seeds;
pub mod synthetic;

pub use agents::Ppdc;
pub use ingest::{PlantCosts, PlantType, PowerPlant, ScenarioConfig, TimeSeriesSet};
pub use repdays::RepresentativeYear;
