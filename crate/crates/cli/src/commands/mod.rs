pub mod calibrate;
pub mod metrics;
pub mod repdays;
pub mod simulate;

use std::path::Path;

use anyhow::Context;
use marketsim_core::ingest::{load_plant_registry, CostTable, PowerPlant, ScenarioConfig};
use marketsim_core::repdays::RepresentativeYear;

use crate::args::SystemInputs;
use crate::failure::{Classify, Outcome};
use crate::manifest::{RunDir, Status};

/// Runs `body` against an open output directory and seals the manifest with
/// the outcome, whichever way it went.
pub fn execute(mut run: RunDir, body: impl FnOnce(&mut RunDir) -> Outcome) -> Outcome {
    let result = body(&mut run);
    let status = if result.is_ok() { Status::Succeeded } else { Status::Failed };
    let sealed = run.finish(status).runtime();
    result.and(sealed)
}

pub struct System {
    pub scenario: ScenarioConfig,
    pub plants: Vec<PowerPlant>,
    pub rep_year: RepresentativeYear,
    pub cost_table: CostTable,
}

pub fn load_system(inputs: &SystemInputs) -> Outcome<System> {
    let scenario = ScenarioConfig::load(&inputs.scenario)
        .with_context(|| format!("scenario {}", inputs.scenario.display()))
        .input()?;
    let cost_table = match &inputs.costs {
        Some(p) => CostTable::load(p).with_context(|| format!("cost table {}", p.display())).input()?,
        None => CostTable::bundled(),
    };
    let plants = load_plant_registry(&inputs.registry, &cost_table, &scenario.genco_ids())
        .with_context(|| format!("plant registry {}", inputs.registry.display()))
        .input()?;
    let rep_year = RepresentativeYear::load(&inputs.repdays)
        .with_context(|| format!("representative days {}", inputs.repdays.display()))
        .input()?;
    Ok(System { scenario, plants, rep_year, cost_table })
}

impl SystemInputs {
    pub fn paths(&self) -> Vec<&Path> {
        let mut p = vec![self.scenario.as_path(), self.registry.as_path(), self.repdays.as_path()];
        p.extend(self.costs.as_deref());
        p
    }
}
