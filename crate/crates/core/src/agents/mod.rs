//! Generation companies: price expectations, investment appraisal and commitment.

mod cashflow;
mod invest;

pub use cashflow::{expected_cashflow, CandidateSpec, Outlook};
pub use invest::{
    candidate_menu, invest_step, Commitment, GenCo, InvestmentCandidate, InvestmentDecision,
    InvestmentLog,
};

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::ingest::IngestError;
use crate::market::MarketError;

#[derive(Debug, thiserror::Error)]
pub enum AgentError {
    #[error("invalid standard deviation {0}")]
    InvalidSigma(f64),
    #[error(transparent)]
    Market(#[from] MarketError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Predicted price duration curve: expected price `m·x + c` at demand `x` MW.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ppdc {
    pub m: f64,
    pub c: f64,
}

impl Ppdc {
    pub fn new(m: f64, c: f64) -> Self {
        Ppdc { m, c }
    }

    pub fn price(&self, demand_mw: f64) -> f64 {
        self.m * demand_mw + self.c
    }
}

/// Perturbs both coefficients with independent normal noise. Zero sigmas
/// return `base` unchanged without consuming randomness.
pub fn sample_belief<R: Rng + ?Sized>(
    base: Ppdc,
    sigma_m: f64,
    sigma_c: f64,
    rng: &mut R,
) -> Result<Ppdc, AgentError> {
    let draw = |mean: f64, sd: f64, rng: &mut R| -> Result<f64, AgentError> {
        if sd == 0.0 {
            return Ok(mean);
        }
        Normal::new(mean, sd)
            .map(|n| n.sample(rng))
            .map_err(|_| AgentError::InvalidSigma(sd))
    };
    if !(sigma_m >= 0.0 && sigma_m.is_finite()) {
        return Err(AgentError::InvalidSigma(sigma_m));
    }
    if !(sigma_c >= 0.0 && sigma_c.is_finite()) {
        return Err(AgentError::InvalidSigma(sigma_c));
    }
    Ok(Ppdc { m: draw(base.m, sigma_m, rng)?, c: draw(base.c, sigma_c, rng)? })
}

/// Net present value of `cashflows[t]` received at the end of year `t`.
pub fn npv(cashflows: &[f64], rate: f64) -> f64 {
    let growth = 1.0 + rate;
    let mut discount = 1.0;
    let mut acc = 0.0;
    for r in cashflows {
        acc += r * discount;
        discount /= growth;
    }
    acc
}
