//! Temporal reduction: cluster the days of a multi-year hourly dataset, pick one
//! representative day per cluster, weight it by cluster size, and measure how well
//! the resulting year reproduces the original series.

mod features;
mod kmeans;
mod metrics;
mod sweep;
mod year;

pub use features::{build_day_matrix, DayMatrix, Normalization, FEATURES};
pub use kmeans::{kmeans, Clustering, Init, KMeansOptions};
pub use metrics::{
    ce_av, duration_curve, nrmse_av, observed_series, pearson, ree_av, weighted_pearson,
    DurationCurve, WeightedSeries,
};
pub use sweep::{evaluate_k_range, representative_year, SweepOptions, SweepRow};
pub use year::{
    assemble_year, select_representative, DayProfile, RepresentativeDay, RepresentativeYear,
    SelectionMethod, DAYS_PER_YEAR, HOURS_PER_YEAR,
};

use crate::ingest::IngestError;

#[derive(Debug, thiserror::Error)]
pub enum RepDaysError {
    #[error("empty time series")]
    Empty,
    #[error("k = {k} is invalid for {days} days")]
    InvalidK { k: usize, days: usize },
    #[error("cluster weights sum to {0}, expected 1")]
    WeightSum(f64),
    #[error("invalid weight {0}")]
    InvalidWeight(f64),
    #[error("{0}")]
    Mismatch(String),
    #[error("observed series {0} sums to zero; relative energy error undefined")]
    ZeroObservedEnergy(usize),
    #[error("observed series {0} has zero range; normalised RMSE undefined")]
    ZeroRange(usize),
    #[error("series {0} has zero variance; correlation undefined")]
    ZeroVariance(usize),
    #[error("need at least two series for correlation error")]
    TooFewSeries,
    #[error("representative days file: {0}")]
    Format(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Ingest(#[from] IngestError),
}
