use std::io::Write;

use super::{clear_market, Bid, ClearingResult, MarketError};
use crate::ingest::{PlantType, Series, HOURS_PER_DAY};
use crate::repdays::RepresentativeDay;

/// How much of a generator's capacity is offered in a given hour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Output {
    /// A constant fraction of capacity.
    Dispatchable { availability: f64 },
    /// Capacity times the hour's value of a capacity-factor series.
    Intermittent(Series),
}

impl Output {
    pub fn for_type(plant_type: PlantType, availability: f64) -> Self {
        match plant_type {
            PlantType::Pv => Output::Intermittent(Series::Solar),
            PlantType::Onshore => Output::Intermittent(Series::Onshore),
            PlantType::Offshore => Output::Intermittent(Series::Offshore),
            _ => Output::Dispatchable { availability },
        }
    }
}

/// A plant as seen by the market: it bids `srmc` for whatever capacity is available.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub plant_id: String,
    pub plant_type: PlantType,
    pub capacity: f64,
    pub srmc: f64,
    pub output: Output,
    /// Out-of-market payment per MWh generated.
    pub subsidy: f64,
}

impl Generator {
    pub fn quantity(&self, day: &RepresentativeDay, hour: usize) -> f64 {
        match self.output {
            Output::Dispatchable { availability } => self.capacity * availability,
            Output::Intermittent(s) => self.capacity * day.values(s)[hour],
        }
    }
}

/// Hourly results for one representative day, with annualised totals
/// (each hour counts `day.hour_weight()` times).
#[derive(Debug, Clone, PartialEq)]
pub struct DayDispatch {
    pub hour_weight: f64,
    pub hours: Vec<ClearingResult>,
    /// MWh per generator, aligned with the generator slice.
    pub energy: Vec<f64>,
    /// Market payments per generator.
    pub market_revenue: Vec<f64>,
    /// Subsidy payments per generator.
    pub subsidy: Vec<f64>,
    pub demand_energy: f64,
    pub unserved_energy: f64,
}

impl DayDispatch {
    pub fn revenue(&self, g: usize) -> f64 {
        self.market_revenue[g] + self.subsidy[g]
    }

    pub fn clearings(&self) -> usize {
        self.hours.len()
    }
}

/// Clears each of the day's 24 hours, scaling its demand by `demand_scale`.
pub fn dispatch_day(
    gens: &[Generator],
    day: &RepresentativeDay,
    demand_scale: f64,
    price_cap: f64,
) -> Result<DayDispatch, MarketError> {
    let w = day.hour_weight();
    let mut out = DayDispatch {
        hour_weight: w,
        hours: Vec::with_capacity(HOURS_PER_DAY),
        energy: vec![0.0; gens.len()],
        market_revenue: vec![0.0; gens.len()],
        subsidy: vec![0.0; gens.len()],
        demand_energy: 0.0,
        unserved_energy: 0.0,
    };
    let mut bids: Vec<Bid> = gens
        .iter()
        .map(|g| Bid::new(g.plant_id.clone(), g.srmc, 0.0))
        .collect();
    let demand = day.values(Series::Demand);
    for h in 0..HOURS_PER_DAY {
        for (b, g) in bids.iter_mut().zip(gens) {
            b.quantity = g.quantity(day, h);
        }
        let r = clear_market(&bids, demand[h] * demand_scale, price_cap)?;
        for (i, &mw) in r.dispatch.iter().enumerate() {
            let mwh = mw * w;
            out.energy[i] += mwh;
            out.market_revenue[i] += mwh * r.clearing_price;
            out.subsidy[i] += mwh * gens[i].subsidy;
        }
        out.demand_energy += r.demand * w;
        out.unserved_energy += r.unserved * w;
        out.hours.push(r);
    }
    Ok(out)
}

/// Per-hour, per-generator dispatch records as CSV.
pub struct DispatchLog<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> DispatchLog<W> {
    pub fn new(out: W) -> Result<Self, MarketError> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record([
            "year",
            "cluster",
            "hour",
            "weight",
            "plant_id",
            "price",
            "dispatch_mw",
            "clearing_price",
            "unserved_mw",
        ])?;
        Ok(DispatchLog { writer })
    }

    pub fn record(
        &mut self,
        year: i32,
        day: &RepresentativeDay,
        gens: &[Generator],
        result: &DayDispatch,
    ) -> Result<(), MarketError> {
        for (h, r) in result.hours.iter().enumerate() {
            for (g, mw) in gens.iter().zip(&r.dispatch) {
                self.writer.write_record([
                    year.to_string(),
                    day.cluster.to_string(),
                    h.to_string(),
                    day.weight.to_string(),
                    g.plant_id.clone(),
                    g.srmc.to_string(),
                    mw.to_string(),
                    r.clearing_price.to_string(),
                    r.unserved.to_string(),
                ])?;
            }
        }
        Ok(())
    }

    pub fn flush(&mut self) -> Result<(), MarketError> {
        self.writer.flush().map_err(|e| MarketError::Csv(e.into()))
    }
}
