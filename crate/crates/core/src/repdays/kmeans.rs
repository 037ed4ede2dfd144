use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DayMatrix, RepDaysError, FEATURES};

/// Centroid seeding scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Init {
    /// D²-weighted seeding.
    #[default]
    PlusPlus,
    /// k distinct days drawn uniformly.
    Forgy,
}

impl FromStr for Init {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plusplus" | "kmeans++" | "++" => Ok(Init::PlusPlus),
            "forgy" => Ok(Init::Forgy),
            other => Err(format!("unknown k-means initialisation `{other}`")),
        }
    }
}

impl fmt::Display for Init {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Init::PlusPlus => "plusplus",
            Init::Forgy => "forgy",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansOptions {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Stop once no centroid moves farther than this.
    pub tol: f64,
    pub init: Init,
}

impl KMeansOptions {
    pub fn new(k: usize, seed: u64) -> Self {
        KMeansOptions {
            k,
            seed,
            max_iter: 300,
            tol: 1e-9,
            init: Init::PlusPlus,
        }
    }
}

/// Result of Lloyd iteration over a [`DayMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub k: usize,
    /// Cluster of each day (row).
    pub assignment: Vec<usize>,
    /// Cluster means in normalised feature space.
    pub centroids: Vec<[f64; FEATURES]>,
    pub counts: Vec<usize>,
    /// Share of days in each cluster.
    pub weights: Vec<f64>,
    /// Row of the member nearest each centroid (ties to the earliest day).
    pub medoids: Vec<usize>,
    /// Within-cluster sum of squares after each assignment step.
    pub inertia_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl Clustering {
    pub fn inertia(&self) -> f64 {
        self.inertia_history.last().copied().unwrap_or(0.0)
    }

    pub fn members(&self, cluster: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == cluster)
            .map(|(i, _)| i)
    }
}

pub(crate) fn sq_dist(a: &[f64; FEATURES], b: &[f64; FEATURES]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(p: &[f64; FEATURES], centroids: &[[f64; FEATURES]]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(p, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn seed_centroids(rows: &[[f64; FEATURES]], k: usize, init: Init, rng: &mut ChaCha8Rng) -> Vec<[f64; FEATURES]> {
    let n = rows.len();
    match init {
        Init::Forgy => index::sample(rng, n, k).into_iter().map(|i| rows[i]).collect(),
        Init::PlusPlus => {
            let mut chosen = vec![false; n];
            let first = rng.random_range(0..n);
            chosen[first] = true;
            let mut centroids = vec![rows[first]];
            let mut d2: Vec<f64> = rows.iter().map(|r| sq_dist(r, &rows[first])).collect();
            while centroids.len() < k {
                let total: f64 = d2.iter().sum();
                let pick = if total > 0.0 {
                    let mut target = rng.random::<f64>() * total;
                    let mut pick = None;
                    for (i, &d) in d2.iter().enumerate() {
                        if d > 0.0 {
                            pick = Some(i);
                            if target < d {
                                break;
                            }
                            target -= d;
                        }
                    }
                    pick.expect("positive total")
                } else {
                    // Every remaining day duplicates a chosen one.
                    let free: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
                    free[rng.random_range(0..free.len())]
                };
                chosen[pick] = true;
                centroids.push(rows[pick]);
                for (i, r) in rows.iter().enumerate() {
                    d2[i] = d2[i].min(sq_dist(r, &rows[pick]));
                }
            }
            centroids
        }
    }
}

/// Lloyd's k-means over the rows of `dm`.
///
/// Empty clusters are refilled with the day farthest from its own centroid.
/// Deterministic for a fixed seed.
pub fn kmeans(dm: &DayMatrix, opts: &KMeansOptions) -> Result<Clustering, RepDaysError> {
    let rows = dm.rows();
    let n = rows.len();
    let k = opts.k;
    if k == 0 || k > n {
        return Err(RepDaysError::InvalidK { k, days: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut centroids = seed_centroids(rows, k, opts.init, &mut rng);
    let mut assignment = vec![0usize; n];
    let mut dist = vec![0.0; n];
    let mut counts = vec![0usize; k];
    let mut history = Vec::new();
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..opts.max_iter.max(1) {
        iterations += 1;
        counts.iter_mut().for_each(|c| *c = 0);
        for (i, r) in rows.iter().enumerate() {
            let (c, d) = nearest(r, &centroids);
            assignment[i] = c;
            dist[i] = d;
            counts[c] += 1;
        }
        while let Some(empty) = counts.iter().position(|&c| c == 0) {
            let far = (0..n)
                .filter(|&i| counts[assignment[i]] > 1)
                .fold(None, |best: Option<usize>, i| match best {
                    Some(b) if dist[b] >= dist[i] => Some(b),
                    _ => Some(i),
                })
                .expect("k <= n leaves a cluster with several members");
            counts[assignment[far]] -= 1;
            assignment[far] = empty;
            counts[empty] = 1;
            dist[far] = 0.0;
            centroids[empty] = rows[far];
        }
        history.push(dist.iter().sum());

        let mut sums = vec![[0.0; FEATURES]; k];
        for (i, r) in rows.iter().enumerate() {
            let s = &mut sums[assignment[i]];
            for j in 0..FEATURES {
                s[j] += r[j];
            }
        }
        let mut shift: f64 = 0.0;
        for (c, s) in sums.iter_mut().enumerate() {
            let inv = counts[c] as f64;
            for v in s.iter_mut() {
                *v /= inv;
            }
            shift = shift.max(sq_dist(s, &centroids[c]).sqrt());
            centroids[c] = *s;
        }
        if shift < opts.tol {
            converged = true;
            break;
        }
    }

    let medoids = (0..k)
        .map(|c| {
            let mut best = (usize::MAX, f64::INFINITY);
            for i in 0..n {
                if assignment[i] == c {
                    let d = sq_dist(&rows[i], &centroids[c]);
                    if d < best.1 {
                        best = (i, d);
                    }
                }
            }
            best.0
        })
        .collect();
    let weights = counts.iter().map(|&c| c as f64 / n as f64).collect();
    Ok(Clustering {
        k,
        assignment,
        centroids,
        counts,
        weights,
        medoids,
        inertia_history: history,
        iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::TimeSeriesSet;
    use crate::repdays::{build_day_matrix, Normalization};
    use crate::synthetic;
    use chrono::NaiveDate;
    use rand_distr::{Distribution, Normal};

    /// Two tight blobs of days: 100 low-demand calm days, 300 high-demand windy days.
    fn blobs() -> (TimeSeriesSet, Vec<usize>) {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let noise = Normal::new(0.0, 1.0).unwrap();
        let centers = [[20_000.0, 0.2, 0.1, 0.15], [40_000.0, 0.1, 0.7, 0.8]];
        let mut days = Vec::new();
        let mut truth = Vec::new();
        for d in 0..400 {
            // Interleave so blob membership is not contiguous.
            let b = usize::from(d % 4 != 0);
            let mut day = [[0.0; 24]; 4];
            for s in 0..4 {
                let spread = if s == 0 { 200.0 } else { 0.005 };
                for h in 0..24 {
                    day[s][h] = centers[b][s] + spread * noise.sample(&mut rng);
                }
            }
            days.push(day);
            truth.push(b);
        }
        let ts = TimeSeriesSet::from_days(NaiveDate::from_ymd_opt(2015, 1, 1).unwrap(), &days)
            .unwrap();
        (ts, truth)
    }

    /// Oracle: which true blob centre is each day nearest to (raw demand only).
    fn nearest_true_center(ts: &TimeSeriesSet, d: usize) -> usize {
        let mean = ts.day(d, crate::ingest::Series::Demand).iter().sum::<f64>() / 24.0;
        usize::from((mean - 40_000.0).abs() < (mean - 20_000.0).abs())
    }

    #[test]
    fn recovers_two_blobs() {
        let (ts, truth) = blobs();
        let dm = build_day_matrix(&ts, Normalization::ZScore).unwrap();
        let c = kmeans(&dm, &KMeansOptions::new(2, 5)).unwrap();
        let mut w = c.weights.clone();
        w.sort_by(f64::total_cmp);
        assert_eq!(w, vec![0.25, 0.75]);
        // Cluster labels are arbitrary; map via day 0.
        let flip = c.assignment[0] != truth[0];
        for d in 0..ts.days() {
            assert_eq!(nearest_true_center(&ts, d), truth[d]);
            assert_eq!(c.assignment[d] != truth[d], flip, "day {d}");
        }
        for (cl, &m) in c.medoids.iter().enumerate() {
            assert_eq!(c.assignment[m], cl);
            let blob = truth[c.members(cl).next().unwrap()];
            assert_eq!(nearest_true_center(&ts, m), blob);
        }
    }

    #[test]
    fn single_cluster_is_the_mean() {
        let ts = synthetic::seasonal_dataset(50, 2);
        let dm = build_day_matrix(&ts, Normalization::ZScore).unwrap();
        let c = kmeans(&dm, &KMeansOptions::new(1, 0)).unwrap();
        assert_eq!(c.weights, vec![1.0]);
        for j in 0..FEATURES {
            let mean = dm.rows().iter().map(|r| r[j]).sum::<f64>() / dm.len() as f64;
            assert!((c.centroids[0][j] - mean).abs() <= 1e-9 * mean.abs().max(1.0));
        }
    }

    #[test]
    fn saturated_k_gives_singletons() {
        let ts = synthetic::seasonal_dataset(20, 4);
        let dm = build_day_matrix(&ts, Normalization::ZScore).unwrap();
        for init in [Init::PlusPlus, Init::Forgy] {
            let opts = KMeansOptions { init, ..KMeansOptions::new(20, 1) };
            let c = kmeans(&dm, &opts).unwrap();
            assert!(c.counts.iter().all(|&n| n == 1));
            assert_eq!(c.inertia(), 0.0);
        }
    }

    #[test]
    fn duplicate_days_still_fill_every_cluster() {
        let day = [[30_000.0; 24], [0.5; 24], [0.3; 24], [0.7; 24]];
        let ts = TimeSeriesSet::from_days(NaiveDate::from_ymd_opt(2018, 1, 1).unwrap(), &[day; 6])
            .unwrap();
        let dm = build_day_matrix(&ts, Normalization::ZScore).unwrap();
        let c = kmeans(&dm, &KMeansOptions::new(3, 9)).unwrap();
        assert!(c.counts.iter().all(|&n| n >= 1));
        assert_eq!(c.counts.iter().sum::<usize>(), 6);
    }

    #[test]
    fn invalid_k() {
        let ts = synthetic::seasonal_dataset(5, 4);
        let dm = build_day_matrix(&ts, Normalization::ZScore).unwrap();
        assert!(matches!(
            kmeans(&dm, &KMeansOptions::new(6, 0)),
            Err(RepDaysError::InvalidK { k: 6, days: 5 })
        ));
        assert!(kmeans(&dm, &KMeansOptions::new(0, 0)).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let ts = synthetic::seasonal_dataset(120, 8);
        let dm = build_day_matrix(&ts, Normalization::ZScore).unwrap();
        let a = kmeans(&dm, &KMeansOptions::new(6, 42)).unwrap();
        let b = kmeans(&dm, &KMeansOptions::new(6, 42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn medoid_tie_goes_to_earliest_day() {
        // Days 0 and 1 are mirror images around the centroid.
        let lo = [[10_000.0; 24], [0.2; 24], [0.2; 24], [0.2; 24]];
        let hi = [[20_000.0; 24], [0.4; 24], [0.4; 24], [0.4; 24]];
        let ts = TimeSeriesSet::from_days(NaiveDate::from_ymd_opt(2018, 1, 1).unwrap(), &[hi, lo])
            .unwrap();
        let dm = build_day_matrix(&ts, Normalization::MinMax).unwrap();
        let c = kmeans(&dm, &KMeansOptions::new(1, 0)).unwrap();
        assert_eq!(c.medoids, vec![0]);
    }
}
