use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use chrono::NaiveDate;

use super::{Clustering, DayMatrix, RepDaysError, WeightedSeries};
use crate::ingest::{Series, HOURS_PER_DAY};

pub const DAYS_PER_YEAR: f64 = 365.0;
pub const HOURS_PER_YEAR: f64 = 8760.0;

/// Tolerance on Σ w = 1.
const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Hourly values of the four series over one day, indexed `[series][hour]`.
pub type DayProfile = [[f64; HOURS_PER_DAY]; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionMethod {
    /// The actual day nearest the cluster centre.
    #[default]
    Medoid,
    /// The cluster mean.
    Centroid,
}

impl FromStr for SelectionMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "medoid" => Ok(SelectionMethod::Medoid),
            "centroid" => Ok(SelectionMethod::Centroid),
            other => Err(format!("unknown selection method `{other}`")),
        }
    }
}

impl fmt::Display for SelectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionMethod::Medoid => "medoid",
            SelectionMethod::Centroid => "centroid",
        })
    }
}

fn profile_from_row(row: &[f64; super::FEATURES]) -> DayProfile {
    let mut p = [[0.0; HOURS_PER_DAY]; 4];
    for s in Series::ALL {
        p[s.index()].copy_from_slice(&row[s.index() * HOURS_PER_DAY..(s.index() + 1) * HOURS_PER_DAY]);
    }
    p
}

/// One 24-hour profile per cluster, in original units.
pub fn select_representative(
    c: &Clustering,
    dm: &DayMatrix,
    method: SelectionMethod,
) -> Vec<DayProfile> {
    (0..c.k)
        .map(|cl| match method {
            SelectionMethod::Medoid => profile_from_row(dm.raw_row(c.medoids[cl])),
            SelectionMethod::Centroid => {
                let mut sum = [0.0; super::FEATURES];
                let mut n = 0usize;
                for i in c.members(cl) {
                    for (s, v) in sum.iter_mut().zip(dm.raw_row(i)) {
                        *s += v;
                    }
                    n += 1;
                }
                sum.iter_mut().for_each(|v| *v /= n as f64);
                profile_from_row(&sum)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepresentativeDay {
    pub cluster: usize,
    /// Share of the year this day stands for.
    pub weight: f64,
    pub profile: DayProfile,
    pub source_date: Option<NaiveDate>,
}

impl RepresentativeDay {
    /// Hours of the year each of this day's hours stands for (w·365).
    pub fn hour_weight(&self) -> f64 {
        self.weight * DAYS_PER_YEAR
    }

    pub fn values(&self, s: Series) -> &[f64; HOURS_PER_DAY] {
        &self.profile[s.index()]
    }
}

/// Weighted representative days standing in for one 8760-hour year.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentativeYear {
    pub days: Vec<RepresentativeDay>,
}

/// Concatenates weighted day profiles into an approximated year.
///
/// Each hour of day i stands for `w_i · 365` hours; fractional durations are kept.
pub fn assemble_year(profiles: &[DayProfile], weights: &[f64]) -> Result<RepresentativeYear, RepDaysError> {
    if profiles.is_empty() {
        return Err(RepDaysError::Empty);
    }
    if profiles.len() != weights.len() {
        return Err(RepDaysError::Mismatch(format!(
            "{} profiles but {} weights",
            profiles.len(),
            weights.len()
        )));
    }
    if let Some(&w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(RepDaysError::InvalidWeight(w));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(RepDaysError::WeightSum(sum));
    }
    let days = profiles
        .iter()
        .zip(weights)
        .enumerate()
        .map(|(i, (p, &w))| RepresentativeDay {
            cluster: i,
            weight: w,
            profile: *p,
            source_date: None,
        })
        .collect();
    Ok(RepresentativeYear { days })
}

impl RepresentativeYear {
    pub fn len(&self) -> usize {
        self.days.len()
    }

    pub fn is_empty(&self) -> bool {
        self.days.is_empty()
    }

    /// Σ over days and hours of the hour weights; 8760 for a valid year.
    pub fn total_hours(&self) -> f64 {
        self.days
            .iter()
            .map(|d| d.hour_weight() * HOURS_PER_DAY as f64)
            .sum()
    }

    /// Per-hour durations in concatenation order.
    pub fn hour_weights(&self) -> Vec<f64> {
        self.days
            .iter()
            .flat_map(|d| std::iter::repeat_n(d.hour_weight(), HOURS_PER_DAY))
            .collect()
    }

    /// Series `s` as a weighted series in concatenation order.
    pub fn weighted(&self, s: Series) -> WeightedSeries {
        let values = self.days.iter().flat_map(|d| d.values(s).iter().copied()).collect();
        WeightedSeries::new(values, self.hour_weights())
    }

    /// All four series, in [`Series::ALL`] order.
    pub fn weighted_series(&self) -> Vec<WeightedSeries> {
        Series::ALL.iter().map(|&s| self.weighted(s)).collect()
    }

    /// `cluster,weight,hour,demand_mw,solar_cf,onshore_cf,offshore_cf`
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), RepDaysError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["cluster", "weight", "hour", "demand_mw", "solar_cf", "onshore_cf", "offshore_cf"])?;
        for d in &self.days {
            for h in 0..HOURS_PER_DAY {
                let mut rec = vec![d.cluster.to_string(), d.weight.to_string(), h.to_string()];
                rec.extend(Series::ALL.iter().map(|&s| d.values(s)[h].to_string()));
                w.write_record(&rec)?;
            }
        }
        w.flush().map_err(|e| RepDaysError::Csv(e.into()))?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, RepDaysError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RepDaysError::Format(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(text.as_bytes())
    }

    pub fn parse<R: std::io::Read>(input: R) -> Result<Self, RepDaysError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let headers = rdr.headers()?.clone();
        let col = |name: &str| {
            headers
                .iter()
                .position(|h| h.eq_ignore_ascii_case(name))
                .ok_or_else(|| RepDaysError::Format(format!("missing column `{name}`")))
        };
        let (c_cluster, c_weight, c_hour) = (col("cluster")?, col("weight")?, col("hour")?);
        let c_series = [
            col(Series::Demand.column())?,
            col(Series::Solar.column())?,
            col(Series::Onshore.column())?,
            col(Series::Offshore.column())?,
        ];
        let mut days: Vec<RepresentativeDay> = Vec::new();
        let mut filled: Vec<[bool; HOURS_PER_DAY]> = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let line = rec.position().map_or(0, |p| p.line());
            let bad = |what: &str| RepDaysError::Format(format!("line {line}: bad {what}"));
            let num = |i: usize, what: &str| -> Result<f64, RepDaysError> {
                rec.get(i)
                    .and_then(|v| v.parse::<f64>().ok())
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| bad(what))
            };
            let cluster: usize = rec.get(c_cluster).and_then(|v| v.parse().ok()).ok_or_else(|| bad("cluster"))?;
            let hour: usize = rec
                .get(c_hour)
                .and_then(|v| v.parse().ok())
                .filter(|&h: &usize| h < HOURS_PER_DAY)
                .ok_or_else(|| bad("hour"))?;
            let weight = num(c_weight, "weight")?;
            let idx = match days.iter().position(|d| d.cluster == cluster) {
                Some(i) => i,
                None => {
                    days.push(RepresentativeDay {
                        cluster,
                        weight,
                        profile: [[0.0; HOURS_PER_DAY]; 4],
                        source_date: None,
                    });
                    filled.push([false; HOURS_PER_DAY]);
                    days.len() - 1
                }
            };
            if days[idx].weight != weight {
                return Err(bad("weight (differs within cluster)"));
            }
            if filled[idx][hour] {
                return Err(bad("hour (duplicate)"));
            }
            filled[idx][hour] = true;
            for s in Series::ALL {
                days[idx].profile[s.index()][hour] = num(c_series[s.index()], s.column())?;
            }
        }
        if let Some(i) = filled.iter().position(|f| f.iter().any(|x| !x)) {
            return Err(RepDaysError::Format(format!(
                "cluster {} does not have all 24 hours",
                days[i].cluster
            )));
        }
        let profiles: Vec<DayProfile> = days.iter().map(|d| d.profile).collect();
        let weights: Vec<f64> = days.iter().map(|d| d.weight).collect();
        let mut year = assemble_year(&profiles, &weights)?;
        for (d, orig) in year.days.iter_mut().zip(&days) {
            d.cluster = orig.cluster;
        }
        Ok(year)
    }
}
