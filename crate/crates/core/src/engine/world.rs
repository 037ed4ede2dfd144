use std::collections::{BTreeMap, HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{EngineError, FundsEntry, MixCategory, PricePoint, YearResult};
use crate::agents::{candidate_menu, invest_step, sample_belief, Commitment, GenCo, Outlook};
use crate::ingest::{CostTable, PlantType, PowerPlant, ScenarioConfig};
use crate::market::{dispatch_day, srmc, DayDispatch, Generator, Output};
use crate::repdays::{RepresentativeDay, RepresentativeYear};
use crate::seeds::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlantStatus {
    UnderConstruction { online_year: i32 },
    Operating,
    Retired { year: i32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantState {
    pub plant: PowerPlant,
    pub status: PlantStatus,
    /// Set for plants built during the simulation.
    pub commitment: Option<Commitment>,
}

impl PlantState {
    pub fn is_operating(&self) -> bool {
        self.status == PlantStatus::Operating
    }
}

/// Everything one simulation run owns.
#[derive(Debug, Clone)]
pub struct World {
    /// The next year to simulate.
    pub year: i32,
    /// Ordered by id; this is the order in which GenCos invest.
    pub gencos: Vec<GenCo>,
    pub plants: Vec<PlantState>,
    pub scenario: ScenarioConfig,
    pub rep_year: RepresentativeYear,
    pub cost_table: CostTable,
    pub seed: u64,
}

impl World {
    pub fn operating(&self) -> impl Iterator<Item = &PlantState> {
        self.plants.iter().filter(|p| p.is_operating())
    }

    pub fn capacity_by_type(&self) -> BTreeMap<PlantType, f64> {
        let mut out = BTreeMap::new();
        for p in self.operating() {
            *out.entry(p.plant.plant_type).or_insert(0.0) += p.plant.capacity;
        }
        out
    }

    fn investable_types(&self) -> Vec<PlantType> {
        if let Some(types) = &self.scenario.investable_types {
            return types.clone();
        }
        // Fuel-burning types are only offered when the scenario prices their fuel.
        self.cost_table
            .plant_types()
            .filter(|t| t.fuel().is_none_or(|f| self.scenario.fuel_price.contains_key(&f)))
            .collect()
    }
}

/// Builds the starting world. Plants already past their operating life are
/// retired immediately.
pub fn init_world(
    scenario: ScenarioConfig,
    plants: Vec<PowerPlant>,
    rep_year: RepresentativeYear,
    cost_table: CostTable,
) -> Result<World, EngineError> {
    scenario.validate()?;
    if rep_year.is_empty() {
        return Err(EngineError::EmptyYear);
    }
    let mut gencos: Vec<GenCo> = scenario
        .gencos
        .iter()
        .map(|g| GenCo { id: g.id.clone(), funds: g.funds, belief: scenario.ppdc_in(scenario.start_year) })
        .collect();
    gencos.sort_by(|a, b| a.id.cmp(&b.id));
    let owners: HashSet<&str> = gencos.iter().map(|g| g.id.as_str()).collect();
    let mut ids = HashSet::new();
    let start = scenario.start_year;
    let mut states = Vec::with_capacity(plants.len());
    for plant in plants {
        if !owners.contains(plant.owner.as_str()) {
            return Err(EngineError::UnknownOwner { plant: plant.id, owner: plant.owner });
        }
        if !ids.insert(plant.id.clone()) {
            return Err(EngineError::DuplicatePlant(plant.id));
        }
        let status = if plant.age(start) >= plant.lifetime() {
            log::info!(
                "retiring {} at start: age {} >= operating period {}",
                plant.id,
                plant.age(start),
                plant.lifetime()
            );
            PlantStatus::Retired { year: start }
        } else {
            PlantStatus::Operating
        };
        states.push(PlantState { plant, status, commitment: None });
    }
    Ok(World {
        year: start,
        gencos,
        plants: states,
        seed: scenario.rng_seed,
        scenario,
        rep_year,
        cost_table,
    })
}

fn generator_for(p: &PowerPlant, sc: &ScenarioConfig, year: i32) -> Result<Generator, EngineError> {
    let fuel = p.plant_type.fuel();
    let price = fuel.and_then(|f| sc.fuel_price_in(f, year));
    let emission = fuel.map_or(0.0, |f| sc.emission_factor_of(f));
    let cost = srmc(p.plant_type, &p.costs, price, sc.carbon_price_in(year), emission)?;
    Ok(Generator {
        plant_id: p.id.clone(),
        plant_type: p.plant_type,
        capacity: p.capacity,
        srmc: cost,
        output: Output::for_type(p.plant_type, sc.availability),
        subsidy: if p.plant_type == PlantType::Nuclear { sc.nuclear_subsidy } else { 0.0 },
    })
}

/// Simulates `world.year` and advances to the next year.
///
/// Phases: retirements, dispatch of every representative day, settlement,
/// investment (not in the scenario's final year), commissioning of plants due
/// next year.
pub fn step_year(world: &mut World) -> Result<YearResult, EngineError> {
    step_year_observed(world, &mut |_, _, _, _| Ok(()))
}

/// Callback receiving each representative day's dispatch as it is cleared.
pub type DayObserver<'a> = dyn FnMut(i32, &RepresentativeDay, &[Generator], &DayDispatch) -> Result<(), String> + 'a;

/// Like [`step_year`], handing every dispatched day to `on_day`; an observer
/// error stops the year before settlement.
pub fn step_year_observed(world: &mut World, on_day: &mut DayObserver<'_>) -> Result<YearResult, EngineError> {
    let year = world.year;
    let sc = &world.scenario;
    if year < sc.start_year || year > sc.end_year {
        return Err(EngineError::YearOutOfScenario { year, start: sc.start_year, end: sc.end_year });
    }

    // Retirements.
    let mut retired = Vec::new();
    for p in world.plants.iter_mut().filter(|p| p.is_operating()) {
        let scheduled = sc.retirements.iter().any(|r| r.plant_id == p.plant.id && r.year <= year);
        if scheduled || p.plant.age(year) >= p.plant.lifetime() {
            p.status = PlantStatus::Retired { year };
            retired.push(p.plant.id.clone());
        }
    }

    // Dispatch.
    let operating: Vec<usize> = (0..world.plants.len()).filter(|&i| world.plants[i].is_operating()).collect();
    let gens = operating
        .iter()
        .map(|&i| generator_for(&world.plants[i].plant, sc, year))
        .collect::<Result<Vec<_>, _>>()?;
    let scale = sc.demand_scale_in(year);
    let mut energy = vec![0.0; gens.len()];
    let mut revenue = vec![0.0; gens.len()];
    let mut subsidy = vec![0.0; gens.len()];
    let (mut demand_mwh, mut unserved_mwh) = (0.0, 0.0);
    let mut prices = Vec::new();
    let mut clearings = 0;
    for day in &world.rep_year.days {
        let d = dispatch_day(&gens, day, scale, sc.price_cap)?;
        on_day(year, day, &gens, &d).map_err(EngineError::Observer)?;
        for g in 0..gens.len() {
            energy[g] += d.energy[g];
            revenue[g] += d.market_revenue[g];
            subsidy[g] += d.subsidy[g];
        }
        demand_mwh += d.demand_energy;
        unserved_mwh += d.unserved_energy;
        clearings += d.clearings();
        prices.extend(d.hours.iter().map(|h| PricePoint { price: h.clearing_price, hours: d.hour_weight }));
    }
    prices.sort_by(|a, b| b.price.total_cmp(&a.price));

    let mut by_type: BTreeMap<MixCategory, f64> = MixCategory::ALL.iter().map(|&c| (c, 0.0)).collect();
    for (g, e) in gens.iter().zip(&energy) {
        *by_type.get_mut(&MixCategory::of(g.plant_type)).expect("all buckets present") += e;
    }
    let served_mwh: f64 = energy.iter().sum();

    // Settlement.
    let owner_index: HashMap<&str, usize> =
        world.gencos.iter().enumerate().map(|(i, g)| (g.id.as_str(), i)).collect();
    let mut funds: Vec<FundsEntry> = world.gencos.iter().map(|g| FundsEntry::open(&g.id, g.funds)).collect();
    for (g, &pi) in operating.iter().enumerate() {
        let p = &world.plants[pi].plant;
        let f = &mut funds[owner_index[p.owner.as_str()]];
        f.market_revenue += revenue[g];
        f.subsidy += subsidy[g];
        f.variable_cost += energy[g] * gens[g].srmc;
        f.fixed_cost += p.costs.fixed_om * p.capacity;
    }
    for p in &world.plants {
        if let (PlantStatus::UnderConstruction { .. }, Some(c)) = (p.status, &p.commitment) {
            if year > c.decision_year {
                funds[owner_index[p.plant.owner.as_str()]].capital_ongoing += c.outlay_in(year);
            }
        }
    }
    for (g, f) in world.gencos.iter_mut().zip(&mut funds) {
        g.funds = f.settled();
        f.end = g.funds;
    }

    // Investment.
    let mut decisions = Vec::new();
    let mut investments = Vec::new();
    if sc.invest && year < sc.end_year && !world.gencos.is_empty() {
        let menu = candidate_menu(&world.cost_table, year, world.investable_types())?;
        let outlook = Outlook { rep_year: &world.rep_year, scenario: &world.scenario };
        let base = world.scenario.ppdc_in(year);
        for (gi, genco) in world.gencos.iter_mut().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(world.seed, &[year as u64, gi as u64]));
            genco.belief = sample_belief(base, world.scenario.sigma_m, world.scenario.sigma_c, &mut rng)?;
            let decision = invest_step(genco, year, &menu, &outlook)?;
            if let Some(c) = decision.commitment() {
                let f = &mut funds[gi];
                f.capital_new = c.capital_schedule[0];
                genco.funds = f.expected_end();
                f.end = genco.funds;
                log::debug!(
                    "{year}: {} commits to {} MW {} online {}",
                    genco.id,
                    c.spec.capacity,
                    c.spec.plant_type,
                    c.online_year
                );
                world.plants.push(PlantState {
                    plant: PowerPlant {
                        id: format!("{}-{}-{}", genco.id, c.spec.plant_type, year),
                        owner: genco.id.clone(),
                        plant_type: c.spec.plant_type,
                        capacity: c.spec.capacity,
                        construction_year: c.online_year,
                        costs: c.spec.costs,
                    },
                    status: PlantStatus::UnderConstruction { online_year: c.online_year },
                    commitment: Some(c.clone()),
                });
                investments.push(c);
            }
            decisions.push(decision);
        }
    }

    // Commissioning.
    for p in &mut world.plants {
        if let PlantStatus::UnderConstruction { online_year } = p.status {
            if online_year <= year + 1 {
                p.status = PlantStatus::Operating;
            }
        }
    }
    world.year += 1;

    Ok(YearResult {
        year,
        energy: by_type,
        demand_mwh,
        served_mwh,
        unserved_mwh,
        prices,
        clearings,
        retired,
        decisions,
        investments,
        funds,
    })
}

/// Simulates `horizon + 1` years starting at `world.year`.
pub fn run(world: &mut World, horizon: u32) -> Result<Vec<YearResult>, EngineError> {
    run_with(world, horizon, |_| Ok(()))
}

/// Like [`run`], handing each year's result to `observer` as soon as it is
/// available; an observer error stops the run.
pub fn run_with<F>(world: &mut World, horizon: u32, mut observer: F) -> Result<Vec<YearResult>, EngineError>
where
    F: FnMut(&YearResult) -> Result<(), String>,
{
    let last = world.year + horizon as i32;
    if last > world.scenario.end_year {
        return Err(EngineError::YearOutOfScenario {
            year: last,
            start: world.scenario.start_year,
            end: world.scenario.end_year,
        });
    }
    let mut out = Vec::with_capacity(horizon as usize + 1);
    for _ in 0..=horizon {
        let r = step_year(world)?;
        observer(&r).map_err(EngineError::Observer)?;
        out.push(r);
    }
    Ok(out)
}
