//! Duration curves and the three approximation-quality metrics.

use super::RepDaysError;
use crate::ingest::{Series, TimeSeriesSet};

/// Values with per-point durations (hours). Observed data uses unit weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSeries {
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
}

impl WeightedSeries {
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Self {
        assert_eq!(values.len(), weights.len(), "values and weights must align");
        WeightedSeries { values, weights }
    }

    pub fn unweighted(values: Vec<f64>) -> Self {
        let weights = vec![1.0; values.len()];
        WeightedSeries { values, weights }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total_duration(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Duration-weighted mean value per hour.
    pub fn mean(&self) -> f64 {
        let s: f64 = self.values.iter().zip(&self.weights).map(|(v, w)| v * w).sum();
        s / self.total_duration()
    }
}

/// The four observed series of `ts` with unit weights, in [`Series::ALL`] order.
pub fn observed_series(ts: &TimeSeriesSet) -> Vec<WeightedSeries> {
    Series::ALL
        .iter()
        .map(|&s| WeightedSeries::unweighted(ts.series(s).to_vec()))
        .collect()
}

/// A series sorted from high to low, each value carrying its duration.
#[derive(Debug, Clone, PartialEq)]
pub struct DurationCurve {
    pub values: Vec<f64>,
    pub durations: Vec<f64>,
}

pub fn duration_curve(series: &WeightedSeries) -> DurationCurve {
    let mut pairs: Vec<(f64, f64)> = series
        .values
        .iter()
        .copied()
        .zip(series.weights.iter().copied())
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let (values, durations) = pairs.into_iter().unzip();
    DurationCurve { values, durations }
}

impl DurationCurve {
    pub fn total_duration(&self) -> f64 {
        self.durations.iter().sum()
    }

    /// Value of the step curve at elapsed duration `t` (hours from the top).
    pub fn value_at(&self, t: f64) -> Option<f64> {
        let mut cum = 0.0;
        for (v, d) in self.values.iter().zip(&self.durations) {
            cum += d;
            if t < cum {
                return Some(*v);
            }
        }
        None
    }

    /// Averages the step curve over `points` equal slices of its normalised
    /// duration axis, so curves of different total length become comparable.
    pub fn resample(&self, points: usize) -> Vec<f64> {
        let total = self.total_duration();
        let mut out = vec![0.0; points];
        if points == 0 || total <= 0.0 {
            return out;
        }
        let width = 1.0 / points as f64;
        let mut cell = 0usize;
        let mut start = 0.0;
        let mut cum = 0.0;
        for (v, d) in self.values.iter().zip(&self.durations) {
            cum += d;
            let end = if cum >= total { 1.0 } else { cum / total };
            let mut seg_start = start;
            while cell < points && seg_start < end {
                let cell_end = if cell + 1 == points { 1.0 } else { (cell + 1) as f64 * width };
                let upto = end.min(cell_end);
                out[cell] += v * (upto - seg_start);
                seg_start = upto;
                if upto >= cell_end {
                    cell += 1;
                }
            }
            start = end;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let cell_start = j as f64 * width;
            let cell_end = if j + 1 == points { 1.0 } else { (j + 1) as f64 * width };
            *o /= cell_end - cell_start;
        }
        out
    }
}

fn check_sets(obs: &[WeightedSeries], approx: &[WeightedSeries]) -> Result<(), RepDaysError> {
    if obs.is_empty() {
        return Err(RepDaysError::Empty);
    }
    if obs.len() != approx.len() {
        return Err(RepDaysError::Mismatch(format!(
            "{} observed series but {} approximated",
            obs.len(),
            approx.len()
        )));
    }
    if obs.iter().chain(approx).any(WeightedSeries::is_empty) {
        return Err(RepDaysError::Empty);
    }
    Ok(())
}

/// Average relative energy error between observed and approximated series.
///
/// Both sides are compared as energy per hour of their own span so a multi-year
/// record can be compared with a one-year approximation.
pub fn ree_av(obs: &[WeightedSeries], approx: &[WeightedSeries]) -> Result<f64, RepDaysError> {
    check_sets(obs, approx)?;
    let mut total = 0.0;
    for (i, (o, a)) in obs.iter().zip(approx).enumerate() {
        let observed = o.mean();
        if observed == 0.0 {
            return Err(RepDaysError::ZeroObservedEnergy(i));
        }
        total += ((observed - a.mean()) / observed).abs();
    }
    Ok(total / obs.len() as f64)
}

/// Average range-normalised RMSE between duration curves resampled to `grid` points.
pub fn nrmse_av(
    obs: &[WeightedSeries],
    approx: &[WeightedSeries],
    grid: usize,
) -> Result<f64, RepDaysError> {
    check_sets(obs, approx)?;
    if grid == 0 {
        return Err(RepDaysError::Mismatch("duration grid must have points".into()));
    }
    let mut total = 0.0;
    for (i, (o, a)) in obs.iter().zip(approx).enumerate() {
        let (lo, hi) = o
            .values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let range = hi - lo;
        if range <= 0.0 {
            return Err(RepDaysError::ZeroRange(i));
        }
        let od = duration_curve(o).resample(grid);
        let ad = duration_curve(a).resample(grid);
        let mse = od
            .iter()
            .zip(&ad)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            / grid as f64;
        total += mse.sqrt() / range;
    }
    Ok(total / obs.len() as f64)
}

/// Average absolute difference of pairwise correlations, over all series pairs.
///
/// Correlations use chronological order; approximated values are weighted by
/// their durations.
pub fn ce_av(obs: &[WeightedSeries], approx: &[WeightedSeries]) -> Result<f64, RepDaysError> {
    check_sets(obs, approx)?;
    let n = obs.len();
    if n < 2 {
        return Err(RepDaysError::TooFewSeries);
    }
    let corr = |set: &[WeightedSeries], i: usize, j: usize| -> Result<f64, RepDaysError> {
        if set[i].weights != set[j].weights {
            return Err(RepDaysError::Mismatch(format!("series {i} and {j} are not aligned")));
        }
        weighted_pearson(&set[i].values, &set[j].values, &set[i].weights).map_err(|e| match e {
            RepDaysError::ZeroVariance(0) => RepDaysError::ZeroVariance(i),
            RepDaysError::ZeroVariance(_) => RepDaysError::ZeroVariance(j),
            other => other,
        })
    };
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += (corr(obs, i, j)? - corr(approx, i, j)?).abs();
        }
    }
    Ok(2.0 / (n * (n - 1)) as f64 * sum)
}

/// Pearson correlation coefficient.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64, RepDaysError> {
    weighted_pearson(a, b, &vec![1.0; a.len()])
}

/// Pearson correlation with per-point weights; `ZeroVariance(0 | 1)` names the
/// degenerate argument.
pub fn weighted_pearson(a: &[f64], b: &[f64], w: &[f64]) -> Result<f64, RepDaysError> {
    if a.len() != b.len() || a.len() != w.len() {
        return Err(RepDaysError::Mismatch("correlation inputs differ in length".into()));
    }
    if a.is_empty() {
        return Err(RepDaysError::Empty);
    }
    let wsum: f64 = w.iter().sum();
    let mean = |x: &[f64]| x.iter().zip(w).map(|(v, w)| v * w).sum::<f64>() / wsum;
    let (ma, mb) = (mean(a), mean(b));
    let (mut cov, mut va, mut vb) = (0.0, 0.0, 0.0);
    for ((x, y), wi) in a.iter().zip(b).zip(w) {
        let (dx, dy) = (x - ma, y - mb);
        cov += wi * dx * dy;
        va += wi * dx * dx;
        vb += wi * dy * dy;
    }
    if va == 0.0 {
        return Err(RepDaysError::ZeroVariance(0));
    }
    if vb == 0.0 {
        return Err(RepDaysError::ZeroVariance(1));
    }
    Ok((cov / (va * vb).sqrt()).clamp(-1.0, 1.0))
}
