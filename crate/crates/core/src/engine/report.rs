use std::collections::BTreeMap;
use std::io::Write;

use super::{EngineError, MixCategory};
use crate::agents::{Commitment, InvestmentDecision};

/// A GenCo's account for one year. `end` is computed from the other fields in
/// the order they are listed.
#[derive(Debug, Clone, PartialEq)]
pub struct FundsEntry {
    pub genco_id: String,
    pub start: f64,
    pub market_revenue: f64,
    pub subsidy: f64,
    pub variable_cost: f64,
    pub fixed_cost: f64,
    /// Instalments on plants already under construction.
    pub capital_ongoing: f64,
    /// First instalment on a plant committed to this year.
    pub capital_new: f64,
    pub end: f64,
}

impl FundsEntry {
    pub(crate) fn open(genco_id: &str, start: f64) -> Self {
        FundsEntry {
            genco_id: genco_id.to_string(),
            start,
            market_revenue: 0.0,
            subsidy: 0.0,
            variable_cost: 0.0,
            fixed_cost: 0.0,
            capital_ongoing: 0.0,
            capital_new: 0.0,
            end: start,
        }
    }

    pub fn settled(&self) -> f64 {
        self.start + self.market_revenue + self.subsidy
            - self.variable_cost
            - self.fixed_cost
            - self.capital_ongoing
    }

    pub fn expected_end(&self) -> f64 {
        self.settled() - self.capital_new
    }
}

/// Hours spent at one clearing price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PricePoint {
    pub price: f64,
    pub hours: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct YearResult {
    pub year: i32,
    /// MWh served per technology bucket; every bucket present.
    pub energy: BTreeMap<MixCategory, f64>,
    pub demand_mwh: f64,
    pub served_mwh: f64,
    pub unserved_mwh: f64,
    /// Clearing prices sorted high to low with their annual hours.
    pub prices: Vec<PricePoint>,
    /// Market clearings performed.
    pub clearings: usize,
    pub retired: Vec<String>,
    pub decisions: Vec<InvestmentDecision>,
    pub investments: Vec<Commitment>,
    pub funds: Vec<FundsEntry>,
}

impl YearResult {
    /// Fraction of served energy per bucket; all zero when nothing was served.
    pub fn mix(&self) -> BTreeMap<MixCategory, f64> {
        self.energy
            .iter()
            .map(|(&c, &e)| (c, if self.served_mwh > 0.0 { e / self.served_mwh } else { 0.0 }))
            .collect()
    }

    pub fn share(&self, c: MixCategory) -> f64 {
        self.mix()[&c]
    }

    /// Hour-weighted mean clearing price.
    pub fn mean_price(&self) -> f64 {
        let hours: f64 = self.prices.iter().map(|p| p.hours).sum();
        self.prices.iter().map(|p| p.price * p.hours).sum::<f64>() / hours
    }
}

/// `year,type,energy_mwh,share`, one row per bucket per year.
pub fn write_mix_csv<W: Write>(out: W, results: &[YearResult]) -> Result<(), EngineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["year", "type", "energy_mwh", "share"])?;
    for r in results {
        let mix = r.mix();
        for (c, e) in &r.energy {
            w.write_record([r.year.to_string(), c.to_string(), e.to_string(), mix[c].to_string()])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_funds_csv<W: Write>(out: W, results: &[YearResult]) -> Result<(), EngineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "year",
        "genco_id",
        "start",
        "market_revenue",
        "subsidy",
        "variable_cost",
        "fixed_cost",
        "capital_ongoing",
        "capital_new",
        "end",
    ])?;
    for r in results {
        for f in &r.funds {
            w.write_record([
                r.year.to_string(),
                f.genco_id.clone(),
                f.start.to_string(),
                f.market_revenue.to_string(),
                f.subsidy.to_string(),
                f.variable_cost.to_string(),
                f.fixed_cost.to_string(),
                f.capital_ongoing.to_string(),
                f.capital_new.to_string(),
                f.end.to_string(),
            ])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
