use std::io::Write;

use super::{expected_cashflow, npv, AgentError, CandidateSpec, Outlook, Ppdc};
use crate::ingest::{lookup_plant_costs, CostTable, IngestError, PlantType};

/// A generation company. Plants are held by the world and refer back by id.
#[derive(Debug, Clone, PartialEq)]
pub struct GenCo {
    pub id: String,
    pub funds: f64,
    /// Price expectation for the current year.
    pub belief: Ppdc,
}

/// An appraised candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct InvestmentCandidate {
    pub spec: CandidateSpec,
    pub npv: f64,
    /// Outlay due in the decision year.
    pub down_payment: f64,
}

/// A plant a GenCo has committed to build.
#[derive(Debug, Clone, PartialEq)]
pub struct Commitment {
    pub genco_id: String,
    pub spec: CandidateSpec,
    pub npv: f64,
    pub decision_year: i32,
    pub online_year: i32,
    /// Capital due in `decision_year + t`.
    pub capital_schedule: Vec<f64>,
}

impl Commitment {
    pub fn outlay_in(&self, year: i32) -> f64 {
        let t = year - self.decision_year;
        if t < 0 {
            return 0.0;
        }
        self.capital_schedule.get(t as usize).copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvestmentDecision {
    pub genco_id: String,
    pub year: i32,
    pub candidates: Vec<InvestmentCandidate>,
    /// Index into `candidates` of the plant committed to, if any.
    pub chosen: Option<usize>,
}

impl InvestmentDecision {
    pub fn commitment(&self) -> Option<Commitment> {
        let c = &self.candidates[self.chosen?];
        Some(Commitment {
            genco_id: self.genco_id.clone(),
            spec: c.spec,
            npv: c.npv,
            decision_year: self.year,
            online_year: self.year + c.spec.online_offset(),
            capital_schedule: c.spec.capital_schedule(),
        })
    }
}

/// One candidate per type: the largest capacity the table lists for it, costed
/// at `year`.
pub fn candidate_menu(
    table: &CostTable,
    year: i32,
    types: impl IntoIterator<Item = PlantType>,
) -> Result<Vec<CandidateSpec>, IngestError> {
    types
        .into_iter()
        .map(|t| {
            let capacity = table.largest_capacity(t).ok_or(IngestError::NoCostsForType(t))?;
            let costs = lookup_plant_costs(table, t, capacity, year)?.costs;
            Ok(CandidateSpec { plant_type: t, capacity, costs })
        })
        .collect()
}

/// Appraises every candidate under the GenCo's current belief and picks the
/// highest positive NPV it can afford to start. Ties keep menu order.
pub fn invest_step(
    genco: &GenCo,
    year: i32,
    menu: &[CandidateSpec],
    outlook: &Outlook<'_>,
) -> Result<InvestmentDecision, AgentError> {
    let rate = outlook.scenario.discount_rate;
    let mut candidates = Vec::with_capacity(menu.len());
    for spec in menu {
        let flows = expected_cashflow(spec, genco.belief, year, outlook)?;
        candidates.push(InvestmentCandidate {
            spec: *spec,
            npv: npv(&flows, rate),
            down_payment: spec.capital_schedule()[0],
        });
    }
    let mut chosen: Option<usize> = None;
    for (i, c) in candidates.iter().enumerate() {
        if c.npv.is_nan() || c.npv <= 0.0 {
            continue;
        }
        if genco.funds < c.down_payment {
            log::debug!(
                "{year}: {} cannot afford {} (npv {:.0}, needs {:.0}, has {:.0})",
                genco.id,
                c.spec.plant_type,
                c.npv,
                c.down_payment,
                genco.funds
            );
            continue;
        }
        if chosen.is_none_or(|j| c.npv > candidates[j].npv) {
            chosen = Some(i);
        }
    }
    Ok(InvestmentDecision { genco_id: genco.id.clone(), year, candidates, chosen })
}

/// Every appraisal as CSV, one row per candidate.
pub struct InvestmentLog<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> InvestmentLog<W> {
    pub fn new(out: W) -> Result<Self, AgentError> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["year", "genco_id", "type", "capacity_mw", "npv", "committed", "online_year"])?;
        Ok(InvestmentLog { writer })
    }

    pub fn record(&mut self, d: &InvestmentDecision) -> Result<(), AgentError> {
        for (i, c) in d.candidates.iter().enumerate() {
            self.writer.write_record([
                d.year.to_string(),
                d.genco_id.clone(),
                c.spec.plant_type.to_string(),
                c.spec.capacity.to_string(),
                c.npv.to_string(),
                (d.chosen == Some(i)).to_string(),
                (d.year + c.spec.online_offset()).to_string(),
            ])?;
        }
        Ok(())
    }

    pub fn flush(&mut self) -> Result<(), AgentError> {
        self.writer.flush().map_err(|e| AgentError::Csv(e.into()))
    }
}
