use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{parse_number, read_file, IngestError, PlantType};

/// The appendix cost tables (modern and historic rows) as shipped with the crate.
pub const BUNDLED_COST_TABLE: &str = include_str!("../../data/plant_costs.csv");

const COLUMNS: [&str; 14] = [
    "type",
    "capacity_mw",
    "year",
    "efficiency",
    "op",
    "pd",
    "cd",
    "pc",
    "cc",
    "ic",
    "fc",
    "vc",
    "inc",
    "conc",
];

/// Techno-economic parameters of a plant.
///
/// Periods are in years. Costs are per MW of capacity except `infrastructure_cost`,
/// which is a lump sum.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlantCosts {
    pub efficiency: f64,
    pub operating_period: f64,
    pub predev_period: f64,
    pub construction_period: f64,
    pub predev_cost: f64,
    pub construction_cost: f64,
    pub infrastructure_cost: f64,
    pub fixed_om: f64,
    /// Per MWh generated.
    pub variable_om: f64,
    pub insurance: f64,
    /// May be negative (reciprocating engines).
    pub connection: f64,
}

impl PlantCosts {
    const FIELDS: usize = 11;

    fn to_array(self) -> [f64; Self::FIELDS] {
        [
            self.efficiency,
            self.operating_period,
            self.predev_period,
            self.construction_period,
            self.predev_cost,
            self.construction_cost,
            self.infrastructure_cost,
            self.fixed_om,
            self.variable_om,
            self.insurance,
            self.connection,
        ]
    }

    fn from_array(a: [f64; Self::FIELDS]) -> Self {
        PlantCosts {
            efficiency: a[0],
            operating_period: a[1],
            predev_period: a[2],
            construction_period: a[3],
            predev_cost: a[4],
            construction_cost: a[5],
            infrastructure_cost: a[6],
            fixed_om: a[7],
            variable_om: a[8],
            insurance: a[9],
            connection: a[10],
        }
    }

    /// Years between the investment decision and first operation.
    pub fn lead_time(&self) -> i32 {
        (self.predev_period + self.construction_period).round() as i32
    }

    /// Up-front capital for a plant of `capacity` MW: construction and
    /// pre-development per MW plus the infrastructure lump sum.
    pub fn capital_cost(&self, capacity: f64) -> f64 {
        (self.construction_cost + self.predev_cost) * capacity + self.infrastructure_cost
    }

    /// Efficiency may be zero for technologies without fuel (the tables use 0.0 for
    /// several wind and solar rows); anything above 1 or negative is rejected.
    fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.efficiency) {
            return Err(format!("efficiency {} outside [0, 1]", self.efficiency));
        }
        let non_negative = [
            ("op", self.operating_period),
            ("pd", self.predev_period),
            ("cd", self.construction_period),
            ("pc", self.predev_cost),
            ("cc", self.construction_cost),
            ("ic", self.infrastructure_cost),
            ("fc", self.fixed_om),
            ("vc", self.variable_om),
            ("inc", self.insurance),
        ];
        for (name, v) in non_negative {
            if v < 0.0 {
                return Err(format!("{name} = {v} is negative"));
            }
        }
        Ok(())
    }
}

/// Identifies one cost row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostKey {
    pub plant_type: PlantType,
    pub capacity: f64,
    pub year: i32,
}

impl fmt::Display for CostKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} MW, {})", self.plant_type, self.capacity, self.year)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostRow {
    pub key: CostKey,
    pub costs: PlantCosts,
}

/// Cost rows grouped by plant type, each group sorted by (year, capacity).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CostTable {
    by_type: BTreeMap<PlantType, Vec<CostRow>>,
}

impl CostTable {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_COST_TABLE.as_bytes()).expect("bundled cost table is valid")
    }

    pub fn load(path: &Path) -> Result<Self, IngestError> {
        Self::parse(read_file(path)?.as_bytes())
    }

    pub fn parse<R: std::io::Read>(input: R) -> Result<Self, IngestError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let headers = rdr.headers()?.clone();
        let mut idx = [0usize; 14];
        for (i, name) in COLUMNS.iter().enumerate() {
            idx[i] = headers
                .iter()
                .position(|h| h.eq_ignore_ascii_case(name))
                .ok_or_else(|| IngestError::MissingColumn(name.to_string()))?;
        }
        let mut table = CostTable::default();
        for rec in rdr.records() {
            let rec = rec?;
            let line = rec.position().map_or(0, |p| p.line());
            let cell = |i: usize| rec.get(idx[i]).unwrap_or("");
            let plant_type: PlantType = cell(0).parse()?;
            let number = |i: usize| {
                parse_number(cell(i)).ok_or_else(|| IngestError::Row {
                    line,
                    message: format!("non-numeric {} `{}`", COLUMNS[i], cell(i)),
                })
            };
            let capacity = number(1)?;
            if capacity <= 0.0 {
                return Err(IngestError::Row {
                    line,
                    message: format!("capacity {capacity} must be positive"),
                });
            }
            let years = expand_year_cell(cell(2))?;
            let mut fields = [0.0; PlantCosts::FIELDS];
            for (f, slot) in fields.iter_mut().enumerate() {
                *slot = number(f + 3)?;
            }
            let costs = PlantCosts::from_array(fields);
            for year in years {
                table.insert(CostRow {
                    key: CostKey {
                        plant_type,
                        capacity,
                        year,
                    },
                    costs,
                })?;
            }
        }
        Ok(table)
    }

    /// Adds a row, rejecting duplicate keys and invalid parameters.
    pub fn insert(&mut self, row: CostRow) -> Result<(), IngestError> {
        row.costs
            .validate()
            .map_err(|message| IngestError::InvalidCosts {
                key: row.key,
                message,
            })?;
        let rows = self.by_type.entry(row.key.plant_type).or_default();
        let pos = rows.partition_point(|r| {
            (r.key.year, r.key.capacity).partial_cmp(&(row.key.year, row.key.capacity))
                == Some(std::cmp::Ordering::Less)
        });
        if rows
            .get(pos)
            .is_some_and(|r| r.key.year == row.key.year && r.key.capacity == row.key.capacity)
        {
            return Err(IngestError::DuplicateCostRow(row.key));
        }
        rows.insert(pos, row);
        Ok(())
    }

    pub fn rows(&self) -> impl Iterator<Item = &CostRow> {
        self.by_type.values().flatten()
    }

    pub fn rows_for(&self, t: PlantType) -> &[CostRow] {
        self.by_type.get(&t).map_or(&[], Vec::as_slice)
    }

    pub fn plant_types(&self) -> impl Iterator<Item = PlantType> + '_ {
        self.by_type.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.by_type.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_type.is_empty()
    }

    /// Largest capacity listed for a type; used as the representative build size.
    pub fn largest_capacity(&self, t: PlantType) -> Option<f64> {
        self.rows_for(t).iter().map(|r| r.key.capacity).reduce(f64::max)
    }

    /// Writes one row per (type, capacity, year) in the loader's column order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), IngestError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(COLUMNS)?;
        for row in self.rows() {
            let mut rec = vec![
                row.key.plant_type.to_string(),
                row.key.capacity.to_string(),
                row.key.year.to_string(),
            ];
            rec.extend(row.costs.to_array().iter().map(f64::to_string));
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| IngestError::Csv(e.into()))?;
        Ok(())
    }
}

/// Expands `2018`, or a composite cell such as `2018/20/25`, into full years.
fn expand_year_cell(cell: &str) -> Result<Vec<i32>, IngestError> {
    let malformed = || IngestError::MalformedYear(cell.to_string());
    let mut parts = cell.trim().split('/');
    let first = parts.next().ok_or_else(malformed)?.trim();
    if first.len() != 4 {
        return Err(malformed());
    }
    let first: i32 = first.parse().map_err(|_| malformed())?;
    let mut years = vec![first];
    for part in parts {
        let part = part.trim();
        let y: i32 = match part.len() {
            2 => first - first % 100 + part.parse::<i32>().map_err(|_| malformed())?,
            4 => part.parse().map_err(|_| malformed())?,
            _ => return Err(malformed()),
        };
        if y <= *years.last().expect("non-empty") {
            return Err(malformed());
        }
        years.push(y);
    }
    Ok(years)
}

/// Linear bracket of `x` within sorted `points`; clamped outside the hull.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Bracket {
    lo: usize,
    hi: usize,
    frac: f64,
    clamped: bool,
}

fn bracket(points: &[f64], x: f64) -> Bracket {
    debug_assert!(!points.is_empty());
    let last = points.len() - 1;
    if x <= points[0] {
        return Bracket { lo: 0, hi: 0, frac: 0.0, clamped: x < points[0] };
    }
    if x >= points[last] {
        return Bracket { lo: last, hi: last, frac: 0.0, clamped: x > points[last] };
    }
    let hi = points.partition_point(|&p| p < x);
    if points[hi] == x {
        return Bracket { lo: hi, hi, frac: 0.0, clamped: false };
    }
    let lo = hi - 1;
    Bracket {
        lo,
        hi,
        frac: (x - points[lo]) / (points[hi] - points[lo]),
        clamped: false,
    }
}

fn lerp(a: &PlantCosts, b: &PlantCosts, frac: f64) -> PlantCosts {
    if frac == 0.0 {
        return *a;
    }
    let (a, b) = (a.to_array(), b.to_array());
    let mut out = [0.0; PlantCosts::FIELDS];
    for i in 0..PlantCosts::FIELDS {
        out[i] = a[i] + (b[i] - a[i]) * frac;
    }
    PlantCosts::from_array(out)
}

/// How a cost lookup was answered.
#[derive(Debug, Clone, PartialEq)]
pub enum Resolution {
    Exact,
    Interpolated {
        /// Bracketing table years (equal when the year matched or was clamped).
        years: (i32, i32),
        /// Bracketing capacities used at the lower and upper year.
        capacities: [(f64, f64); 2],
        /// True when the query fell outside the table's hull on either axis.
        clamped: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedCosts {
    pub costs: PlantCosts,
    pub resolution: Resolution,
}

/// Resolves costs for a plant of `capacity` MW built in `year`.
///
/// Exact keys are returned verbatim. Otherwise each field is linearly
/// interpolated across capacity at the two bracketing years, then across year.
/// Queries outside the table are clamped to the nearest row.
pub fn lookup_plant_costs(
    table: &CostTable,
    plant_type: PlantType,
    capacity: f64,
    year: i32,
) -> Result<ResolvedCosts, IngestError> {
    let rows = table.rows_for(plant_type);
    if rows.is_empty() {
        return Err(IngestError::NoCostsForType(plant_type));
    }
    if let Some(r) = rows
        .iter()
        .find(|r| r.key.year == year && r.key.capacity == capacity)
    {
        return Ok(ResolvedCosts {
            costs: r.costs,
            resolution: Resolution::Exact,
        });
    }

    let mut years: Vec<i32> = rows.iter().map(|r| r.key.year).collect();
    years.dedup();
    let year_points: Vec<f64> = years.iter().map(|&y| y as f64).collect();
    let yb = bracket(&year_points, year as f64);

    let at_year = |y: i32| {
        let slice: Vec<&CostRow> = rows.iter().filter(|r| r.key.year == y).collect();
        let caps: Vec<f64> = slice.iter().map(|r| r.key.capacity).collect();
        let cb = bracket(&caps, capacity);
        let costs = lerp(&slice[cb.lo].costs, &slice[cb.hi].costs, cb.frac);
        (costs, (caps[cb.lo], caps[cb.hi]), cb.clamped)
    };
    let (lo_costs, lo_caps, lo_clamped) = at_year(years[yb.lo]);
    let (hi_costs, hi_caps, hi_clamped) = at_year(years[yb.hi]);
    Ok(ResolvedCosts {
        costs: lerp(&lo_costs, &hi_costs, yb.frac),
        resolution: Resolution::Interpolated {
            years: (years[yb.lo], years[yb.hi]),
            capacities: [lo_caps, hi_caps],
            clamped: yb.clamped || lo_clamped || hi_clamped,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bundled() -> CostTable {
        CostTable::bundled()
    }

    fn exact(t: PlantType, cap: f64, year: i32) -> PlantCosts {
        let r = lookup_plant_costs(&bundled(), t, cap, year).unwrap();
        assert_eq!(r.resolution, Resolution::Exact);
        r.costs
    }

    #[test]
    fn composite_year_cells_expand() {
        assert_eq!(expand_year_cell("2018/20/25").unwrap(), vec![2018, 2020, 2025]);
        assert_eq!(expand_year_cell("2025").unwrap(), vec![2025]);
        assert_eq!(expand_year_cell("1999/2001").unwrap(), vec![1999, 2001]);
        for bad in ["18", "2018/", "2018/2", "2018/20/19", "year", ""] {
            assert!(
                matches!(expand_year_cell(bad), Err(IngestError::MalformedYear(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn modern_ccgt_row() {
        let c = exact(PlantType::Ccgt, 1200.0, 2018);
        assert_eq!(c.efficiency, 0.54);
        assert_eq!(c.operating_period, 25.0);
        assert_eq!(c.predev_cost, 10_000.0);
        assert_eq!(c.construction_cost, 500_000.0);
        assert_eq!(c.infrastructure_cost, 15_100.0);
        assert_eq!(c.fixed_om, 12_200.0);
        assert_eq!(c.variable_om, 3.0);
        // Composite cell: 2020 and 2025 carry the same row.
        assert_eq!(exact(PlantType::Ccgt, 1200.0, 2025), c);
    }

    #[test]
    fn modern_nuclear_row() {
        let c = exact(PlantType::Nuclear, 3300.0, 2025);
        assert_eq!(c.efficiency, 1.0);
        assert_eq!(c.operating_period, 60.0);
        assert_eq!(c.predev_period, 5.0);
        assert_eq!(c.construction_period, 8.0);
        assert_eq!(c.predev_cost, 240_000.0);
        assert_eq!(c.construction_cost, 4_100_000.0);
        assert_eq!(c.lead_time(), 13);
    }

    #[test]
    fn historic_ccgt_rows() {
        let c = exact(PlantType::Ccgt, 1200.0, 1990);
        assert_eq!(c.predev_cost, 59_884.0);
        assert_eq!(c.construction_cost, 2_994_246.0);
        assert_eq!(c.fixed_om, 73_059.0);
        assert_eq!(exact(PlantType::Ccgt, 1200.0, 2000).construction_cost, 2_483_747.0);
    }

    #[test]
    fn year_midpoint_interpolation() {
        let r = lookup_plant_costs(&bundled(), PlantType::Ccgt, 1200.0, 1995).unwrap();
        let hand = (2_994_246.0 + 2_483_747.0) / 2.0;
        assert_relative_eq!(r.costs.construction_cost, hand, max_relative = 1e-9);
        assert!(matches!(
            r.resolution,
            Resolution::Interpolated { years: (1990, 2000), clamped: false, .. }
        ));
    }

    #[test]
    fn capacity_then_year_interpolation() {
        // Halfway between 168 and 1200 MW, halfway between 1990 and 2000.
        let table = bundled();
        let cap = (168.0 + 1200.0) / 2.0;
        let r = lookup_plant_costs(&table, PlantType::Ccgt, cap, 1995).unwrap();
        let hand = ((2_114_099.0 + 2_994_246.0) / 2.0 + (1_358_089.0 + 2_483_747.0) / 2.0) / 2.0;
        assert_relative_eq!(r.costs.construction_cost, hand, max_relative = 1e-9);
    }

    #[test]
    fn outside_hull_clamps() {
        let table = bundled();
        let r = lookup_plant_costs(&table, PlantType::Nuclear, 5000.0, 2100).unwrap();
        assert_eq!(r.costs, exact(PlantType::Nuclear, 3300.0, 2025));
        assert!(matches!(r.resolution, Resolution::Interpolated { clamped: true, .. }));
        let early = lookup_plant_costs(&table, PlantType::Ccgt, 1200.0, 1950).unwrap();
        assert_eq!(early.costs, exact(PlantType::Ccgt, 1200.0, 1980));
    }

    #[test]
    fn unknown_type_in_table() {
        let table = CostTable::parse(
            "type,capacity_mw,year,efficiency,op,pd,cd,pc,cc,ic,fc,vc,inc,conc\n\
             CCGT,1200,2018,0.54,25,3,3,10000,500000,15100,12200,3,2100,3300\n"
                .as_bytes(),
        )
        .unwrap();
        assert!(matches!(
            lookup_plant_costs(&table, PlantType::Coal, 600.0, 2018),
            Err(IngestError::NoCostsForType(PlantType::Coal))
        ));
    }

    #[test]
    fn rejects_duplicates_and_bad_efficiency() {
        let header = "type,capacity_mw,year,efficiency,op,pd,cd,pc,cc,ic,fc,vc,inc,conc\n";
        let row = "CCGT,1200,2018,0.54,25,3,3,10000,500000,15100,12200,3,2100,3300\n";
        let dup = format!("{header}{row}CCGT,1200,2016/18,0.5,25,3,3,1,1,1,1,1,1,1\n");
        assert!(matches!(
            CostTable::parse(dup.as_bytes()),
            Err(IngestError::DuplicateCostRow(_))
        ));
        let eta = format!("{header}CCGT,1200,2018,1.2,25,3,3,10000,500000,15100,12200,3,2100,3300\n");
        assert!(matches!(
            CostTable::parse(eta.as_bytes()),
            Err(IngestError::InvalidCosts { .. })
        ));
        let year = format!("{header}CCGT,1200,20x8,0.5,25,3,3,10000,500000,15100,12200,3,2100,3300\n");
        assert!(matches!(
            CostTable::parse(year.as_bytes()),
            Err(IngestError::MalformedYear(_))
        ));
    }

    #[test]
    fn negative_connection_cost_accepted() {
        let c = exact(PlantType::RecipDiesel, 20.0, 2020);
        assert_eq!(c.connection, -31_900.0);
    }

    #[test]
    fn thousands_separators_accepted() {
        let text = "type,capacity_mw,year,efficiency,op,pd,cd,pc,cc,ic,fc,vc,inc,conc\n\
                    CCGT,1200,2018,0.54,25,3,3,\"10,000\",\"500,000\",15100,12200,3,2100,3300\n";
        let t = CostTable::parse(text.as_bytes()).unwrap();
        assert_eq!(t.rows().next().unwrap().costs.construction_cost, 500_000.0);
    }
}
