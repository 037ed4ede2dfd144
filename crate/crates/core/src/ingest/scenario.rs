use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{read_file, Fuel, IngestError, PlantType};
use crate::agents::Ppdc;

/// A generation company as declared in the scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenCoSpec {
    pub id: String,
    /// Starting funds in currency units.
    pub funds: f64,
}

/// A plant forced out of service at the start of `year`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Retirement {
    pub plant_id: String,
    pub year: i32,
}

/// Exogenous scenario: price paths, policy parameters and agents.
///
/// Per-year tables are keyed by calendar year. Values outside the table's
/// range are held at the nearest known year.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub start_year: i32,
    pub end_year: i32,
    /// Currency per MWh of fuel energy.
    pub fuel_price: BTreeMap<Fuel, BTreeMap<i32, f64>>,
    /// Currency per tonne CO2.
    pub carbon_price: BTreeMap<i32, f64>,
    /// Multiplier on representative-day demand; 1.0 where absent.
    pub demand_scale: BTreeMap<i32, f64>,
    /// Tonnes CO2 per MWh of fuel energy; 0 for fuels not listed.
    pub emission_factor: BTreeMap<Fuel, f64>,
    pub retirements: Vec<Retirement>,
    pub discount_rate: f64,
    pub price_cap: f64,
    /// Out-of-market payment per MWh of nuclear output.
    pub nuclear_subsidy: f64,
    pub sigma_m: f64,
    pub sigma_c: f64,
    pub rng_seed: u64,
    /// Availability of dispatchable plants.
    pub availability: f64,
    pub invest: bool,
    /// Technologies GenCos may build; all types in the cost table when `None`.
    pub investable_types: Option<Vec<PlantType>>,
    /// Base price expectation shared by all GenCos.
    pub ppdc: Ppdc,
    /// Optional per-year overrides of `ppdc`.
    pub ppdc_by_year: BTreeMap<i32, Ppdc>,
    pub gencos: Vec<GenCoSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    start_year: i32,
    end_year: i32,
    #[serde(default)]
    fuel_price: BTreeMap<Fuel, BTreeMap<String, f64>>,
    carbon_price: BTreeMap<String, f64>,
    #[serde(default)]
    demand_scale: BTreeMap<String, f64>,
    #[serde(default)]
    emission_factor: BTreeMap<Fuel, f64>,
    #[serde(default)]
    retirements: Vec<Retirement>,
    #[serde(default = "default_discount_rate")]
    discount_rate: f64,
    #[serde(default = "default_price_cap")]
    price_cap: f64,
    #[serde(default)]
    nuclear_subsidy: f64,
    #[serde(default)]
    sigma_m: f64,
    #[serde(default)]
    sigma_c: f64,
    #[serde(default)]
    rng_seed: u64,
    #[serde(default = "default_availability")]
    availability: f64,
    #[serde(default = "default_invest")]
    invest: bool,
    #[serde(default)]
    investable_types: Option<Vec<PlantType>>,
    ppdc: Ppdc,
    #[serde(default)]
    ppdc_by_year: BTreeMap<String, Ppdc>,
    #[serde(default)]
    gencos: Vec<GenCoSpec>,
}

fn default_discount_rate() -> f64 {
    0.06
}

fn default_price_cap() -> f64 {
    300.0
}

fn default_availability() -> f64 {
    1.0
}

fn default_invest() -> bool {
    true
}

fn year_keys<V>(table: BTreeMap<String, V>, what: &str) -> Result<BTreeMap<i32, V>, IngestError> {
    table
        .into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<i32>()
                .map(|y| (y, v))
                .map_err(|_| IngestError::Scenario(format!("{what}: `{k}` is not a year")))
        })
        .collect()
}

/// Value at the latest year not after `year`, else the earliest entry.
pub(crate) fn held<V: Copy>(table: &BTreeMap<i32, V>, year: i32) -> Option<V> {
    table
        .range(..=year)
        .next_back()
        .or_else(|| table.iter().next())
        .map(|(_, v)| *v)
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, IngestError> {
        Self::from_toml_str(&read_file(path)?)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, IngestError> {
        let raw: RawScenario = toml::from_str(text)?;
        let fuel_price = raw
            .fuel_price
            .into_iter()
            .map(|(f, t)| Ok((f, year_keys(t, &format!("fuel_price.{f}"))?)))
            .collect::<Result<_, IngestError>>()?;
        let cfg = ScenarioConfig {
            start_year: raw.start_year,
            end_year: raw.end_year,
            fuel_price,
            carbon_price: year_keys(raw.carbon_price, "carbon_price")?,
            demand_scale: year_keys(raw.demand_scale, "demand_scale")?,
            emission_factor: raw.emission_factor,
            retirements: raw.retirements,
            discount_rate: raw.discount_rate,
            price_cap: raw.price_cap,
            nuclear_subsidy: raw.nuclear_subsidy,
            sigma_m: raw.sigma_m,
            sigma_c: raw.sigma_c,
            rng_seed: raw.rng_seed,
            availability: raw.availability,
            invest: raw.invest,
            investable_types: raw.investable_types,
            ppdc: raw.ppdc,
            ppdc_by_year: year_keys(raw.ppdc_by_year, "ppdc_by_year")?,
            gencos: raw.gencos,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn years(&self) -> std::ops::RangeInclusive<i32> {
        self.start_year..=self.end_year
    }

    pub fn validate(&self) -> Result<(), IngestError> {
        let err = |m: String| Err(IngestError::Scenario(m));
        if self.end_year < self.start_year {
            return err(format!(
                "end_year {} is before start_year {}",
                self.end_year, self.start_year
            ));
        }
        for y in self.years() {
            if !self.carbon_price.contains_key(&y) {
                return err(format!("carbon_price missing for year {y}"));
            }
            for (fuel, table) in &self.fuel_price {
                if !table.contains_key(&y) {
                    return err(format!("fuel_price.{fuel} missing for year {y}"));
                }
            }
        }
        let finite_non_negative = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(IngestError::Scenario(format!("{name} = {v} must be finite and >= 0")))
            }
        };
        finite_non_negative("sigma_m", self.sigma_m)?;
        finite_non_negative("sigma_c", self.sigma_c)?;
        finite_non_negative("nuclear_subsidy", self.nuclear_subsidy)?;
        for (y, &v) in &self.demand_scale {
            finite_non_negative(&format!("demand_scale.{y}"), v)?;
        }
        for (f, &v) in &self.emission_factor {
            finite_non_negative(&format!("emission_factor.{f}"), v)?;
        }
        for (y, &v) in &self.carbon_price {
            if !v.is_finite() {
                return err(format!("carbon_price.{y} is not finite"));
            }
        }
        if !(self.discount_rate > -1.0 && self.discount_rate.is_finite()) {
            return err(format!("discount_rate {} must exceed -1", self.discount_rate));
        }
        if !(self.price_cap.is_finite() && self.price_cap > 0.0) {
            return err(format!("price_cap {} must be positive", self.price_cap));
        }
        if !(self.availability > 0.0 && self.availability <= 1.0) {
            return err(format!("availability {} outside (0, 1]", self.availability));
        }
        let mut ids = HashSet::new();
        for g in &self.gencos {
            if !ids.insert(g.id.as_str()) {
                return err(format!("duplicate genco id `{}`", g.id));
            }
            if !g.funds.is_finite() {
                return err(format!("genco `{}` funds not finite", g.id));
            }
        }
        Ok(())
    }

    /// Fuel price in `year`, held constant beyond the table.
    pub fn fuel_price_in(&self, fuel: Fuel, year: i32) -> Option<f64> {
        self.fuel_price.get(&fuel).and_then(|t| held(t, year))
    }

    pub fn carbon_price_in(&self, year: i32) -> f64 {
        held(&self.carbon_price, year).unwrap_or(0.0)
    }

    pub fn demand_scale_in(&self, year: i32) -> f64 {
        held(&self.demand_scale, year).unwrap_or(1.0)
    }

    pub fn emission_factor_of(&self, fuel: Fuel) -> f64 {
        self.emission_factor.get(&fuel).copied().unwrap_or(0.0)
    }

    /// Base price expectation in `year`.
    pub fn ppdc_in(&self, year: i32) -> Ppdc {
        held(&self.ppdc_by_year, year).unwrap_or(self.ppdc)
    }

    pub fn genco_ids(&self) -> Vec<String> {
        self.gencos.iter().map(|g| g.id.clone()).collect()
    }
}
