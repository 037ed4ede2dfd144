use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use chrono::{DateTime, NaiveDate, NaiveDateTime, Timelike};

use super::{parse_number, read_file, IngestError};

pub const HOURS_PER_DAY: usize = 24;

/// Maximum fraction of rows that may be rejected for out-of-range values.
const MAX_REJECTED_FRACTION: f64 = 0.01;

/// One of the four aligned hourly series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    Demand,
    Solar,
    Onshore,
    Offshore,
}

impl Series {
    pub const ALL: [Series; 4] = [
        Series::Demand,
        Series::Solar,
        Series::Onshore,
        Series::Offshore,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// CSV column name.
    pub fn column(self) -> &'static str {
        match self {
            Series::Demand => "demand_mw",
            Series::Solar => "solar_cf",
            Series::Onshore => "onshore_cf",
            Series::Offshore => "offshore_cf",
        }
    }

    pub fn is_capacity_factor(self) -> bool {
        self != Series::Demand
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

/// Aligned hourly demand and capacity-factor series made of complete days.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesSet {
    timestamps: Vec<NaiveDateTime>,
    values: [Vec<f64>; 4],
}

/// What was dropped while loading an hourly file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub total_rows: usize,
    pub rejected_rows: usize,
    pub dropped_hours: usize,
    pub retained_days: usize,
}

impl TimeSeriesSet {
    /// Builds a set, checking alignment, value ranges and whole-day structure.
    pub fn new(timestamps: Vec<NaiveDateTime>, values: [Vec<f64>; 4]) -> Result<Self, IngestError> {
        let n = timestamps.len();
        let bad = |message: String| IngestError::Row { line: 0, message };
        if values.iter().any(|v| v.len() != n) {
            return Err(bad("series lengths differ from timestamp count".into()));
        }
        if n == 0 {
            return Err(IngestError::NoCompleteDays);
        }
        if !n.is_multiple_of(HOURS_PER_DAY) {
            return Err(bad(format!("{n} hours is not a whole number of days")));
        }
        for w in timestamps.windows(2) {
            if w[1] <= w[0] {
                return Err(bad(format!("timestamps not strictly increasing at {}", w[1])));
            }
        }
        for day in timestamps.chunks(HOURS_PER_DAY) {
            let date = day[0].date();
            for (h, ts) in day.iter().enumerate() {
                if ts.date() != date || ts.hour() as usize != h || ts.minute() != 0 {
                    return Err(bad(format!("incomplete day starting {date}")));
                }
            }
        }
        for s in Series::ALL {
            for (i, &v) in values[s.index()].iter().enumerate() {
                if let Some(msg) = check_value(s, v) {
                    return Err(bad(format!("{} at {}: {msg}", s, timestamps[i])));
                }
            }
        }
        Ok(TimeSeriesSet { timestamps, values })
    }

    /// Builds a set from per-day profiles starting at `start`, one calendar day each.
    pub fn from_days(
        start: NaiveDate,
        days: &[[[f64; HOURS_PER_DAY]; 4]],
    ) -> Result<Self, IngestError> {
        let mut timestamps = Vec::with_capacity(days.len() * HOURS_PER_DAY);
        let mut values: [Vec<f64>; 4] = Default::default();
        for (d, day) in days.iter().enumerate() {
            let date = start + chrono::Days::new(d as u64);
            for h in 0..HOURS_PER_DAY {
                timestamps.push(date.and_hms_opt(h as u32, 0, 0).expect("valid hour"));
                for s in Series::ALL {
                    values[s.index()].push(day[s.index()][h]);
                }
            }
        }
        Self::new(timestamps, values)
    }

    pub fn hours(&self) -> usize {
        self.timestamps.len()
    }

    pub fn days(&self) -> usize {
        self.timestamps.len() / HOURS_PER_DAY
    }

    pub fn timestamps(&self) -> &[NaiveDateTime] {
        &self.timestamps
    }

    pub fn series(&self, s: Series) -> &[f64] {
        &self.values[s.index()]
    }

    /// The 24 hourly values of series `s` on day `d`.
    pub fn day(&self, d: usize, s: Series) -> &[f64] {
        &self.values[s.index()][d * HOURS_PER_DAY..(d + 1) * HOURS_PER_DAY]
    }

    pub fn date(&self, d: usize) -> NaiveDate {
        self.timestamps[d * HOURS_PER_DAY].date()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), IngestError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["timestamp", "demand_mw", "solar_cf", "onshore_cf", "offshore_cf"])?;
        for (i, ts) in self.timestamps.iter().enumerate() {
            let mut rec = vec![ts.format("%Y-%m-%dT%H:%M:%S").to_string()];
            rec.extend(Series::ALL.iter().map(|s| self.values[s.index()][i].to_string()));
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| IngestError::Csv(e.into()))?;
        Ok(())
    }
}

fn check_value(s: Series, v: f64) -> Option<&'static str> {
    if !v.is_finite() {
        Some("not finite")
    } else if s.is_capacity_factor() && !(0.0..=1.0).contains(&v) {
        Some("capacity factor outside [0, 1]")
    } else if !s.is_capacity_factor() && v < 0.0 {
        Some("negative demand")
    } else {
        None
    }
}

fn parse_timestamp(cell: &str) -> Option<NaiveDateTime> {
    let cell = cell.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(cell) {
        return Some(dt.naive_local());
    }
    const FORMATS: [&str; 4] = [
        "%Y-%m-%dT%H:%M:%S",
        "%Y-%m-%d %H:%M:%S",
        "%Y-%m-%dT%H:%M",
        "%Y-%m-%d %H:%M",
    ];
    FORMATS
        .iter()
        .find_map(|f| NaiveDateTime::parse_from_str(cell, f).ok())
}

/// Loads `timestamp,demand_mw,solar_cf,onshore_cf,offshore_cf` hourly data.
///
/// Rows with out-of-range values are rejected (an error if more than 1% are);
/// any day without all 24 hours is dropped.
pub fn load_hourly_series(path: &Path) -> Result<(TimeSeriesSet, LoadReport), IngestError> {
    let text = read_file(path)?;
    parse_hourly_series(text.as_bytes())
}

pub(crate) fn parse_hourly_series<R: std::io::Read>(
    input: R,
) -> Result<(TimeSeriesSet, LoadReport), IngestError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| IngestError::MissingColumn(name.to_string()))
    };
    let ts_col = col("timestamp")?;
    let series_cols = [
        col(Series::Demand.column())?,
        col(Series::Solar.column())?,
        col(Series::Onshore.column())?,
        col(Series::Offshore.column())?,
    ];

    let mut report = LoadReport::default();
    let mut first_reject: Option<String> = None;
    // (timestamp, values) for accepted rows; rejected rows only poison their day.
    let mut rows: Vec<(NaiveDateTime, Option<[f64; 4]>)> = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        report.total_rows += 1;
        let line = rec.position().map_or(0, |p| p.line());
        let cell = |i: usize| rec.get(i).unwrap_or("");
        let ts = parse_timestamp(cell(ts_col)).ok_or_else(|| IngestError::Row {
            line,
            message: format!("unparseable timestamp `{}`", cell(ts_col)),
        })?;
        let mut vals = [0.0; 4];
        let mut reject = None;
        for s in Series::ALL {
            let raw = cell(series_cols[s.index()]);
            let v = parse_number(raw).ok_or_else(|| IngestError::Row {
                line,
                message: format!("non-numeric {} `{raw}`", s),
            })?;
            if reject.is_none() {
                reject = check_value(s, v).map(|m| format!("line {line}: {s} = {v}: {m}"));
            }
            vals[s.index()] = v;
        }
        if let Some(msg) = reject {
            report.rejected_rows += 1;
            first_reject.get_or_insert(msg);
            rows.push((ts, None));
        } else {
            rows.push((ts, Some(vals)));
        }
    }

    if report.total_rows > 0
        && report.rejected_rows as f64 > MAX_REJECTED_FRACTION * report.total_rows as f64
    {
        return Err(IngestError::TooManyRejected {
            rejected: report.rejected_rows,
            total: report.total_rows,
            first: first_reject.unwrap_or_default(),
        });
    }
    for w in rows.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(IngestError::Row {
                line: 0,
                message: format!("timestamps not strictly increasing at {}", w[1].0),
            });
        }
    }

    let mut per_day: HashMap<NaiveDate, usize> = HashMap::new();
    for (ts, _) in &rows {
        *per_day.entry(ts.date()).or_default() += 1;
    }
    let mut timestamps = Vec::new();
    let mut values: [Vec<f64>; 4] = Default::default();
    for day in rows.chunk_by(|a, b| a.0.date() == b.0.date()) {
        let complete = day.len() == HOURS_PER_DAY
            && per_day[&day[0].0.date()] == HOURS_PER_DAY
            && day
                .iter()
                .enumerate()
                .all(|(h, (ts, v))| v.is_some() && ts.hour() as usize == h && ts.minute() == 0);
        if !complete {
            continue;
        }
        for (ts, v) in day {
            let v = v.expect("checked complete");
            timestamps.push(*ts);
            for s in Series::ALL {
                values[s.index()].push(v[s.index()]);
            }
        }
    }
    report.dropped_hours = report.total_rows - timestamps.len();
    report.retained_days = timestamps.len() / HOURS_PER_DAY;
    if report.dropped_hours > 0 {
        log::info!(
            "dropped {} hours outside complete days ({} rejected rows)",
            report.dropped_hours,
            report.rejected_rows
        );
    }
    let set = TimeSeriesSet::new(timestamps, values)?;
    Ok((set, report))
}
