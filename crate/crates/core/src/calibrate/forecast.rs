use std::collections::BTreeMap;

use super::{CalibrateError, Trajectory};
use crate::engine::MixCategory;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForecastErrors {
    pub mae: f64,
    pub rmse: f64,
    /// MAE relative to a forecast that repeats the baseline value; `None`
    /// when that naive forecast is perfect.
    pub mase: Option<f64>,
}

/// Errors of `simulated` against `observed`, scaled by the naive forecast that
/// predicts `baseline` every year.
pub fn forecast_error_metrics(
    simulated: &[f64],
    observed: &[f64],
    baseline: f64,
) -> Result<ForecastErrors, CalibrateError> {
    if simulated.len() != observed.len() || simulated.is_empty() {
        return Err(CalibrateError::YearMismatch(format!(
            "{} simulated values vs {} observed",
            simulated.len(),
            observed.len()
        )));
    }
    let n = simulated.len() as f64;
    let mae = simulated.iter().zip(observed).map(|(s, o)| (s - o).abs()).sum::<f64>() / n;
    let rmse = (simulated.iter().zip(observed).map(|(s, o)| (s - o).powi(2)).sum::<f64>() / n).sqrt();
    let naive = observed.iter().map(|o| (baseline - o).abs()).sum::<f64>() / n;
    Ok(ForecastErrors { mae, rmse, mase: (naive > 0.0).then(|| mae / naive) })
}

/// Per-bucket errors over the years after `baseline_year`, using the observed
/// mix in `baseline_year` as the naive forecast.
pub fn forecast_errors_by_type(
    simulated: &Trajectory,
    observed: &Trajectory,
    baseline_year: i32,
) -> Result<BTreeMap<MixCategory, ForecastErrors>, CalibrateError> {
    let baseline = observed
        .get(&baseline_year)
        .ok_or_else(|| CalibrateError::Trajectory(format!("no observed mix for baseline {baseline_year}")))?;
    let years: Vec<i32> = observed.keys().copied().filter(|&y| y > baseline_year).collect();
    if years.is_empty() {
        return Err(CalibrateError::Trajectory(format!("no observed years after {baseline_year}")));
    }
    let mut out = BTreeMap::new();
    for (&cat, &base) in baseline {
        let mut sim = Vec::with_capacity(years.len());
        let mut obs = Vec::with_capacity(years.len());
        for y in &years {
            let get = |t: &Trajectory, which: &str| {
                t.get(y).and_then(|m| m.get(&cat)).copied().ok_or_else(|| {
                    CalibrateError::YearMismatch(format!("{which} trajectory lacks {cat} in {y}"))
                })
            };
            sim.push(get(simulated, "simulated")?);
            obs.push(get(observed, "observed")?);
        }
        out.insert(cat, forecast_error_metrics(&sim, &obs, base)?);
    }
    Ok(out)
}
