use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;

use super::RepDaysError;
use crate::ingest::{Series, TimeSeriesSet, HOURS_PER_DAY};

/// Features per day: 24 hours for each of the four series, series-major.
pub const FEATURES: usize = HOURS_PER_DAY * 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    ZScore,
    MinMax,
    None,
}

impl FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "zscore" => Ok(Normalization::ZScore),
            "minmax" => Ok(Normalization::MinMax),
            "none" => Ok(Normalization::None),
            other => Err(format!("unknown normalization `{other}`")),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::ZScore => "zscore",
            Normalization::MinMax => "minmax",
            Normalization::None => "none",
        })
    }
}

/// One row per complete day; each column is one (series, hour) feature scaled
/// across all days. The unscaled rows are kept alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct DayMatrix {
    rows: Vec<[f64; FEATURES]>,
    raw: Vec<[f64; FEATURES]>,
    dates: Vec<NaiveDate>,
    offset: [f64; FEATURES],
    scale: [f64; FEATURES],
    normalization: Normalization,
}

impl DayMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64; FEATURES] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[[f64; FEATURES]] {
        &self.rows
    }

    /// The day's original values, same layout as [`DayMatrix::row`].
    pub fn raw_row(&self, i: usize) -> &[f64; FEATURES] {
        &self.raw[i]
    }

    pub fn date(&self, i: usize) -> NaiveDate {
        self.dates[i]
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Maps a normalised feature vector back to original units.
    pub fn denormalize(&self, v: &[f64; FEATURES]) -> [f64; FEATURES] {
        let mut out = [0.0; FEATURES];
        for j in 0..FEATURES {
            out[j] = v[j] * self.scale[j] + self.offset[j];
        }
        out
    }

    pub fn feature_index(series: Series, hour: usize) -> usize {
        series.index() * HOURS_PER_DAY + hour
    }
}

/// Lays each day of `ts` out as a 96-feature row and scales every column.
///
/// Zero-variance (or zero-range) columns normalise to 0.
pub fn build_day_matrix(
    ts: &TimeSeriesSet,
    normalization: Normalization,
) -> Result<DayMatrix, RepDaysError> {
    let days = ts.days();
    if days == 0 {
        return Err(RepDaysError::Empty);
    }
    let mut raw = vec![[0.0; FEATURES]; days];
    for (d, row) in raw.iter_mut().enumerate() {
        for s in Series::ALL {
            let vals = ts.day(d, s);
            row[s.index() * HOURS_PER_DAY..(s.index() + 1) * HOURS_PER_DAY].copy_from_slice(vals);
        }
    }

    let mut offset = [0.0; FEATURES];
    let mut scale = [1.0; FEATURES];
    let n = days as f64;
    for j in 0..FEATURES {
        match normalization {
            Normalization::None => {}
            Normalization::ZScore => {
                let mean = raw.iter().map(|r| r[j]).sum::<f64>() / n;
                let var = raw.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n;
                offset[j] = mean;
                scale[j] = var.sqrt();
            }
            Normalization::MinMax => {
                let (lo, hi) = raw
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                        (lo.min(r[j]), hi.max(r[j]))
                    });
                offset[j] = lo;
                scale[j] = hi - lo;
            }
        }
    }

    let rows = raw
        .iter()
        .map(|r| {
            let mut out = [0.0; FEATURES];
            for j in 0..FEATURES {
                out[j] = if scale[j] > 0.0 {
                    (r[j] - offset[j]) / scale[j]
                } else {
                    0.0
                };
            }
            out
        })
        .collect();
    let dates = (0..days).map(|d| ts.date(d)).collect();
    Ok(DayMatrix {
        rows,
        raw,
        dates,
        offset,
        scale,
        normalization,
    })
}
