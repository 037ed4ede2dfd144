//! Seeded synthetic weather-and-demand data for tests, benchmarks and demos.
//!
//! Demand peaks in winter with morning and evening humps; solar follows day
//! length and cloud cover; onshore and offshore wind share a persistent,
//! winter-biased weather state, so the four series are mutually correlated.

use std::f64::consts::PI;

use chrono::NaiveDate;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::ingest::{TimeSeriesSet, HOURS_PER_DAY};

fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// `days` consecutive days from 2013-01-01.
pub fn seasonal_dataset(days: usize, seed: u64) -> TimeSeriesSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = Normal::new(0.0, 1.0).expect("valid normal");
    let mut wind_state = 0.0_f64;
    let mut cloud_state = 0.0_f64;
    let mut profiles = Vec::with_capacity(days);
    for d in 0..days {
        // +1 in midwinter, -1 in midsummer.
        let winter = (2.0 * PI * (d as f64 + 10.0) / 365.0).cos();
        wind_state = 0.8 * wind_state + 0.6 * unit.sample(&mut rng);
        cloud_state = 0.6 * cloud_state + 0.8 * unit.sample(&mut rng);
        let cloud = logistic(cloud_state + 0.5 * winter);
        let weekend = matches!(d % 7, 5 | 6);
        let day_len = 12.0 - 4.0 * winter;
        let sunrise = 12.5 - day_len / 2.0;

        let mut p = [[0.0; HOURS_PER_DAY]; 4];
        let mut gust = 0.0_f64;
        for h in 0..HOURS_PER_DAY {
            let hf = h as f64;
            let morning = (-(hf - 8.0).powi(2) / 6.0).exp();
            let evening = (-(hf - 18.5).powi(2) / 5.0).exp();
            let night = (-(hf - 3.5).powi(2) / 10.0).exp();
            let shape = 0.55 * morning + 0.8 * evening - 0.35 * night;
            let level = 32_000.0 + 7_000.0 * winter - if weekend { 3_500.0 } else { 0.0 };
            let demand = level * (1.0 + 0.25 * shape) + 600.0 * unit.sample(&mut rng)
                + 800.0 * wind_state.max(0.0) * winter.max(0.0);

            let t = (hf - sunrise) / day_len;
            let solar = if (0.0..=1.0).contains(&t) {
                (PI * t).sin() * (0.45 - 0.2 * winter) * (1.0 - 0.8 * cloud)
            } else {
                0.0
            };

            gust = 0.7 * gust + 0.15 * unit.sample(&mut rng);
            let onshore = logistic(-0.8 + 0.9 * winter + 1.1 * wind_state + 0.2 * (PI * hf / 12.0).sin() + gust);
            let offshore = logistic(-0.1 + 0.7 * winter + 1.2 * wind_state + 0.7 * gust);

            p[0][h] = demand.max(0.0);
            p[1][h] = solar.clamp(0.0, 1.0);
            p[2][h] = onshore.clamp(0.0, 1.0);
            p[3][h] = offshore.clamp(0.0, 1.0);
        }
        profiles.push(p);
    }
    let start = NaiveDate::from_ymd_opt(2013, 1, 1).expect("valid date");
    TimeSeriesSet::from_days(start, &profiles).expect("synthetic data satisfies invariants")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::Series;
    use crate::repdays::pearson;

    #[test]
    fn deterministic_and_in_range() {
        let a = seasonal_dataset(120, 4);
        let b = seasonal_dataset(120, 4);
        assert_eq!(a, b);
        assert_eq!(a.hours(), 120 * 24);
        assert_ne!(a, seasonal_dataset(120, 5));
    }

    #[test]
    fn wind_series_are_correlated() {
        let ts = seasonal_dataset(365, 1);
        let r = pearson(ts.series(Series::Onshore), ts.series(Series::Offshore)).unwrap();
        assert!(r > 0.5, "onshore/offshore correlation {r}");
        let solar: f64 = ts.series(Series::Solar).iter().sum();
        assert!(solar > 0.0);
    }
}
