use super::{AgentError, Ppdc};
use crate::ingest::{PlantCosts, PlantType, ScenarioConfig, Series};
use crate::market::srmc;
use crate::repdays::RepresentativeYear;

/// A plant a GenCo could build.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateSpec {
    pub plant_type: PlantType,
    pub capacity: f64,
    pub costs: PlantCosts,
}

impl CandidateSpec {
    pub fn lead_time(&self) -> i32 {
        self.costs.lead_time()
    }

    /// Years from the decision to the first operating year.
    pub fn online_offset(&self) -> i32 {
        self.lead_time().max(1)
    }

    pub fn lifetime(&self) -> i32 {
        self.costs.operating_period.round() as i32
    }

    /// Capital outlay in each year from the decision year on: spread evenly over
    /// the lead time, or paid at once when there is none.
    pub fn capital_schedule(&self) -> Vec<f64> {
        let total = self.costs.capital_cost(self.capacity);
        let years = self.lead_time().max(1) as usize;
        vec![total / years as f64; years]
    }

    pub fn annual_fixed_cost(&self) -> f64 {
        self.costs.fixed_om * self.capacity
    }
}

/// What a GenCo knows about the future when appraising an investment.
#[derive(Debug, Clone, Copy)]
pub struct Outlook<'a> {
    pub rep_year: &'a RepresentativeYear,
    pub scenario: &'a ScenarioConfig,
}

impl Outlook<'_> {
    /// Expected operating margin in calendar `year` under `belief`.
    ///
    /// Each representative hour is priced off the curve at that hour's demand.
    /// Dispatchable plants expect to run at available capacity whenever the
    /// price (plus any nuclear subsidy) covers their marginal cost; intermittent
    /// plants sell whatever the capacity factor delivers.
    fn operating_margin(&self, cand: &CandidateSpec, belief: Ppdc, year: i32) -> Result<f64, AgentError> {
        let sc = self.scenario;
        let fuel_price = cand.plant_type.fuel().and_then(|f| sc.fuel_price_in(f, year));
        let emission = cand.plant_type.fuel().map_or(0.0, |f| sc.emission_factor_of(f));
        let cost = srmc(cand.plant_type, &cand.costs, fuel_price, sc.carbon_price_in(year), emission)?;
        let subsidy = if cand.plant_type == PlantType::Nuclear { sc.nuclear_subsidy } else { 0.0 };
        let scale = sc.demand_scale_in(year);
        let cf_series = match cand.plant_type {
            PlantType::Pv => Some(Series::Solar),
            PlantType::Onshore => Some(Series::Onshore),
            PlantType::Offshore => Some(Series::Offshore),
            _ => None,
        };
        let mut margin = 0.0;
        for day in &self.rep_year.days {
            let w = day.hour_weight();
            let demand = day.values(Series::Demand);
            for h in 0..demand.len() {
                let price = belief.price(demand[h] * scale) + subsidy;
                let sold = match cf_series {
                    Some(s) => cand.capacity * day.values(s)[h],
                    None if price >= cost => cand.capacity * sc.availability,
                    None => 0.0,
                };
                margin += w * sold * (price - cost);
            }
        }
        Ok(margin)
    }
}

/// Net cash flow in each year from the decision year (`t = 0`) to the end of
/// the plant's life: operating margin less fixed costs while operating, less
/// capital outlays during development and construction.
pub fn expected_cashflow(
    cand: &CandidateSpec,
    belief: Ppdc,
    decision_year: i32,
    outlook: &Outlook<'_>,
) -> Result<Vec<f64>, AgentError> {
    let start = cand.online_offset();
    let years = (start + cand.lifetime()) as usize;
    let mut flows = vec![0.0; years];
    for (t, c) in cand.capital_schedule().into_iter().enumerate() {
        flows[t] -= c;
    }
    let fixed = cand.annual_fixed_cost();
    for t in start..start + cand.lifetime() {
        let margin = outlook.operating_margin(cand, belief, decision_year + t)?;
        flows[t as usize] += margin - fixed;
    }
    Ok(flows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::ScenarioConfig;
    use crate::repdays::{assemble_year, RepresentativeYear};
    use approx::assert_relative_eq;

    fn scenario() -> ScenarioConfig {
        ScenarioConfig::from_toml_str(
            r#"
start_year = 2020
end_year = 2020
ppdc = { m = 0.0, c = 50.0 }
nuclear_subsidy = 120.0
[carbon_price]
2020 = 0.0
[fuel_price.uranium]
2020 = 0.0
"#,
        )
        .unwrap()
    }

    fn flat_year(demand: f64, cf: f64) -> RepresentativeYear {
        let mut p = [[cf; 24]; 4];
        p[0] = [demand; 24];
        assemble_year(&[p], &[1.0]).unwrap()
    }

    fn plant(t: PlantType, vc: f64, lead: f64, op: f64) -> CandidateSpec {
        CandidateSpec {
            plant_type: t,
            capacity: 100.0,
            costs: PlantCosts {
                efficiency: 1.0,
                operating_period: op,
                construction_period: lead,
                construction_cost: 1000.0,
                fixed_om: 10.0,
                variable_om: vc,
                ..PlantCosts::default()
            },
        }
    }

    #[test]
    fn flat_curve_margin() {
        let sc = scenario();
        let year = flat_year(30_000.0, 0.0);
        let out = Outlook { rep_year: &year, scenario: &sc };
        let cand = plant(PlantType::Hydro, 40.0, 2.0, 3.0);
        let flows = expected_cashflow(&cand, Ppdc::new(0.0, 50.0), 2020, &out).unwrap();
        assert_eq!(flows.len(), 5);
        // Capital 100 MW x 1000 spread over two years.
        assert_eq!(&flows[..2], &[-50_000.0, -50_000.0]);
        let margin = 100.0 * 8760.0 * 10.0;
        for f in &flows[2..] {
            assert_relative_eq!(*f, margin - 1000.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn never_dispatched_pays_fixed_and_capital() {
        let sc = scenario();
        let year = flat_year(30_000.0, 0.0);
        let out = Outlook { rep_year: &year, scenario: &sc };
        let cand = plant(PlantType::Hydro, 60.0, 0.0, 4.0);
        let flows = expected_cashflow(&cand, Ppdc::new(0.0, 50.0), 2020, &out).unwrap();
        // No lead time: capital in the decision year, operation from the next.
        assert_eq!(flows, vec![-100_000.0, -1000.0, -1000.0, -1000.0, -1000.0]);
    }

    #[test]
    fn nuclear_subsidy_adds_per_mwh() {
        let mut sc = scenario();
        let year = flat_year(30_000.0, 0.0);
        let cand = plant(PlantType::Nuclear, 40.0, 1.0, 1.0);
        let with = expected_cashflow(&cand, Ppdc::new(0.0, 50.0), 2020, &Outlook { rep_year: &year, scenario: &sc })
            .unwrap();
        sc.nuclear_subsidy = 0.0;
        let without =
            expected_cashflow(&cand, Ppdc::new(0.0, 50.0), 2020, &Outlook { rep_year: &year, scenario: &sc })
                .unwrap();
        assert_relative_eq!(with[1] - without[1], 120.0 * 100.0 * 8760.0, max_relative = 1e-12);
    }

    #[test]
    fn intermittent_sells_capacity_factor() {
        let sc = scenario();
        let year = flat_year(30_000.0, 0.25);
        let out = Outlook { rep_year: &year, scenario: &sc };
        let cand = plant(PlantType::Onshore, 0.0, 1.0, 1.0);
        let flows = expected_cashflow(&cand, Ppdc::new(0.0, 50.0), 2020, &out).unwrap();
        assert_relative_eq!(flows[1], 100.0 * 0.25 * 8760.0 * 50.0 - 1000.0, max_relative = 1e-12);
    }

    #[test]
    fn missing_fuel_is_an_error() {
        let sc = scenario();
        let year = flat_year(30_000.0, 0.0);
        let out = Outlook { rep_year: &year, scenario: &sc };
        let mut cand = plant(PlantType::Ccgt, 1.0, 1.0, 1.0);
        cand.costs.efficiency = 0.5;
        assert!(expected_cashflow(&cand, Ppdc::new(0.0, 50.0), 2020, &out).is_err());
    }
}
