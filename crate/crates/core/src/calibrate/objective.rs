use std::collections::BTreeMap;
use std::path::Path;

use super::{CalibrateError, GenomeLayout};
use crate::engine::{init_world, run, MixCategory, YearResult};
use crate::ingest::{CostTable, PowerPlant, ScenarioConfig};
use crate::repdays::RepresentativeYear;

/// Share of served energy per technology bucket.
pub type Mix = BTreeMap<MixCategory, f64>;
/// Mix per calendar year.
pub type Trajectory = BTreeMap<i32, Mix>;

/// Mean absolute share error over `types`.
pub fn mix_error_validation(
    simulated: &Mix,
    target: &Mix,
    types: &[MixCategory],
) -> Result<f64, CalibrateError> {
    let mut sum = 0.0;
    for &t in types {
        let f = simulated.get(&t).ok_or(CalibrateError::MissingCategory(t))?;
        let a = target.get(&t).ok_or(CalibrateError::MissingCategory(t))?;
        sum += (a - f).abs();
    }
    Ok(sum / types.len() as f64)
}

/// Sum over years of the per-year mix error. Both trajectories must cover
/// the same years.
pub fn mix_error_longterm(
    simulated: &Trajectory,
    target: &Trajectory,
    types: &[MixCategory],
) -> Result<f64, CalibrateError> {
    if !simulated.keys().eq(target.keys()) {
        return Err(CalibrateError::YearMismatch(format!(
            "simulated {:?} vs target {:?}",
            simulated.keys().collect::<Vec<_>>(),
            target.keys().collect::<Vec<_>>()
        )));
    }
    simulated
        .iter()
        .zip(target.values())
        .map(|((_, f), a)| mix_error_validation(f, a, types))
        .sum()
}

/// Reads `year,type,share` rows; other columns are ignored.
pub fn parse_trajectory<R: std::io::Read>(input: R) -> Result<Trajectory, CalibrateError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CalibrateError::Trajectory(format!("missing column `{name}`")))
    };
    let (year_col, type_col, share_col) = (col("year")?, col("type")?, col("share")?);
    let mut out = Trajectory::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let bad = |what: &str| CalibrateError::Trajectory(format!("line {line}: {what}"));
        let year: i32 = rec[year_col].parse().map_err(|_| bad("year is not an integer"))?;
        let cat: MixCategory = rec[type_col].parse().map_err(|e: String| bad(&e))?;
        let share: f64 = rec[share_col].parse().map_err(|_| bad("share is not a number"))?;
        if !share.is_finite() {
            return Err(bad("share is not finite"));
        }
        let slot = out.entry(year).or_default();
        if slot.insert(cat, share).is_some() {
            return Err(bad(&format!("duplicate {cat} for {year}")));
        }
    }
    Ok(out)
}

pub fn load_trajectory(path: &Path) -> Result<Trajectory, CalibrateError> {
    let file = std::fs::File::open(path)
        .map_err(|source| CalibrateError::Io { path: path.to_path_buf(), source })?;
    parse_trajectory(file)
}

/// Everything a calibration run holds fixed.
#[derive(Debug, Clone)]
pub struct ScenarioBundle {
    pub scenario: ScenarioConfig,
    pub plants: Vec<PowerPlant>,
    pub rep_year: RepresentativeYear,
    pub cost_table: CostTable,
    pub target: Trajectory,
    /// Buckets compared by the objective.
    pub types: Vec<MixCategory>,
    /// Leave the initial year out of the long-term objective.
    pub exclude_first_year: bool,
}

impl ScenarioBundle {
    pub fn new(
        scenario: ScenarioConfig,
        plants: Vec<PowerPlant>,
        rep_year: RepresentativeYear,
        cost_table: CostTable,
        target: Trajectory,
    ) -> Self {
        ScenarioBundle {
            scenario,
            plants,
            rep_year,
            cost_table,
            target,
            types: MixCategory::SCORED.to_vec(),
            exclude_first_year: false,
        }
    }
}

/// Runs the bundle's scenario with the parameters `genome` encodes.
pub fn simulate_genome(
    layout: &GenomeLayout,
    genome: &[f64],
    bundle: &ScenarioBundle,
    eval_seed: u64,
) -> Result<Vec<YearResult>, CalibrateError> {
    let d = layout.decode(genome)?;
    let mut sc = bundle.scenario.clone();
    sc.ppdc = d.ppdc;
    sc.ppdc_by_year = d.ppdc_by_year;
    sc.sigma_m = d.sigma_m;
    sc.sigma_c = d.sigma_c;
    if let Some(s) = d.nuclear_subsidy {
        sc.nuclear_subsidy = s;
    }
    sc.rng_seed = eval_seed;
    let horizon = (sc.end_year - sc.start_year) as u32;
    let mut world = init_world(sc, bundle.plants.clone(), bundle.rep_year.clone(), bundle.cost_table.clone())?;
    Ok(run(&mut world, horizon)?)
}

/// Mix error in the final simulated year.
pub fn objective_validation(
    genome: &[f64],
    bundle: &ScenarioBundle,
    eval_seed: u64,
) -> Result<f64, CalibrateError> {
    let results = simulate_genome(&GenomeLayout::Validation, genome, bundle, eval_seed)?;
    let last = results.last().expect("run yields at least one year");
    let target = bundle
        .target
        .get(&last.year)
        .ok_or_else(|| CalibrateError::Trajectory(format!("no target mix for {}", last.year)))?;
    mix_error_validation(&last.mix(), target, &bundle.types)
}

/// Mix error summed over every simulated year (optionally skipping the first).
pub fn objective_longterm(
    layout: &GenomeLayout,
    genome: &[f64],
    bundle: &ScenarioBundle,
    eval_seed: u64,
) -> Result<f64, CalibrateError> {
    let results = simulate_genome(layout, genome, bundle, eval_seed)?;
    let skip = usize::from(bundle.exclude_first_year);
    let simulated: Trajectory = results.iter().skip(skip).map(|r| (r.year, r.mix())).collect();
    let target: Trajectory = simulated
        .keys()
        .map(|y| {
            bundle
                .target
                .get(y)
                .map(|m| (*y, m.clone()))
                .ok_or_else(|| CalibrateError::Trajectory(format!("no target mix for {y}")))
        })
        .collect::<Result<_, _>>()?;
    mix_error_longterm(&simulated, &target, &bundle.types)
}
