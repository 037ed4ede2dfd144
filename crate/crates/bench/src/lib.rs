//! Fixtures shared by the benchmarks in `benches/`.

use marketsim_core::engine::{init_world, World};
use marketsim_core::ingest::{parse_plant_registry, CostTable, ScenarioConfig};
use marketsim_core::market::Bid;
use marketsim_core::repdays::RepresentativeYear;

const COSTS: &str = include_str!("../../../data/toy/costs.csv");
const SCENARIO: &str = include_str!("../../../data/toy/transition_scenario.toml");
const PLANTS: &str = include_str!("../../../data/toy/transition_plants.csv");
const REPDAYS: &str = include_str!("../../../data/toy/transition_repdays.csv");

/// Coal-to-gas toy world at its first year, with yearly CCGT investment.
pub fn transition_world() -> World {
    let scenario = ScenarioConfig::from_toml_str(SCENARIO).expect("bundled scenario parses");
    let table = CostTable::parse(COSTS.as_bytes()).expect("bundled costs parse");
    let plants = parse_plant_registry(PLANTS.as_bytes(), &table, &scenario.genco_ids()).expect("bundled plants parse");
    let rep = RepresentativeYear::parse(REPDAYS.as_bytes()).expect("bundled days parse");
    init_world(scenario, plants, rep, table).expect("bundled world is valid")
}

/// `n` bids with scattered prices and sizes.
pub fn bid_stack(n: usize) -> Vec<Bid> {
    (0..n)
        .map(|i| {
            let price = ((i * 7919) % 997) as f64 / 10.0;
            let quantity = 100.0 + ((i * 104_729) % 900) as f64;
            Bid::new(format!("g{i}"), price, quantity)
        })
        .collect()
}
