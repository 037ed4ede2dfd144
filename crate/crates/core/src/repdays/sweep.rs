use rayon::prelude::*;

use super::{
    assemble_year, build_day_matrix, ce_av, kmeans, nrmse_av, observed_series, ree_av,
    select_representative, DayMatrix, Init, KMeansOptions, Normalization, RepDaysError,
    RepresentativeYear, SelectionMethod, WeightedSeries,
};
use crate::ingest::TimeSeriesSet;
use crate::seeds::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub normalization: Normalization,
    pub init: Init,
    pub max_iter: usize,
    pub tol: f64,
    /// Points on the shared duration axis used by the RMSE metric.
    pub grid_points: usize,
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            normalization: Normalization::ZScore,
            init: Init::PlusPlus,
            max_iter: 300,
            tol: 1e-9,
            grid_points: 8760,
            seed: 1,
        }
    }
}

impl SweepOptions {
    fn kmeans_options(&self, k: usize) -> KMeansOptions {
        KMeansOptions {
            k,
            // One stream per k; both selection methods see the same clustering.
            seed: derive_seed(self.seed, &[k as u64]),
            max_iter: self.max_iter,
            tol: self.tol,
            init: self.init,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub k: usize,
    pub method: SelectionMethod,
    pub ce_av: f64,
    pub nrmse_av: f64,
    pub ree_av: f64,
}

fn year_from_matrix(
    dm: &DayMatrix,
    k: usize,
    method: SelectionMethod,
    opts: &SweepOptions,
) -> Result<RepresentativeYear, RepDaysError> {
    let clustering = kmeans(dm, &opts.kmeans_options(k))?;
    let profiles = select_representative(&clustering, dm, method);
    let mut year = assemble_year(&profiles, &clustering.weights)?;
    if method == SelectionMethod::Medoid {
        for (day, &m) in year.days.iter_mut().zip(&clustering.medoids) {
            day.source_date = Some(dm.date(m));
        }
    }
    Ok(year)
}

/// Clusters `ts` into `k` days and assembles the weighted year.
pub fn representative_year(
    ts: &TimeSeriesSet,
    k: usize,
    method: SelectionMethod,
    opts: &SweepOptions,
) -> Result<RepresentativeYear, RepDaysError> {
    let dm = build_day_matrix(ts, opts.normalization)?;
    year_from_matrix(&dm, k, method, opts)
}

fn score(
    observed: &[WeightedSeries],
    year: &RepresentativeYear,
    grid: usize,
) -> Result<(f64, f64, f64), RepDaysError> {
    let approx = year.weighted_series();
    Ok((
        ce_av(observed, &approx)?,
        nrmse_av(observed, &approx, grid)?,
        ree_av(observed, &approx)?,
    ))
}

/// Scores every `k` in `ks` with each selection method. Rows come back ordered
/// by `ks` then `methods` regardless of evaluation order.
pub fn evaluate_k_range(
    ts: &TimeSeriesSet,
    ks: &[usize],
    methods: &[SelectionMethod],
    opts: &SweepOptions,
) -> Result<Vec<SweepRow>, RepDaysError> {
    let dm = build_day_matrix(ts, opts.normalization)?;
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > dm.len()) {
        return Err(RepDaysError::InvalidK { k, days: dm.len() });
    }
    let observed = observed_series(ts);
    let jobs: Vec<(usize, SelectionMethod)> = ks
        .iter()
        .flat_map(|&k| methods.iter().map(move |&m| (k, m)))
        .collect();
    jobs.par_iter()
        .map(|&(k, method)| {
            let year = year_from_matrix(&dm, k, method, opts)?;
            let (ce, nrmse, ree) = score(&observed, &year, opts.grid_points)?;
            log::debug!("k={k} {method}: ce={ce:.4} nrmse={nrmse:.4} ree={ree:.4}");
            Ok(SweepRow { k, method, ce_av: ce, nrmse_av: nrmse, ree_av: ree })
        })
        .collect()
}
