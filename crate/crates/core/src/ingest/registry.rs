use std::collections::HashSet;
use std::path::Path;

use super::{lookup_plant_costs, parse_number, read_file, CostTable, IngestError, PowerPlant};

/// Loads `plant_id,owner_id,type,capacity_mw,construction_year` and resolves each
/// plant's costs from `table` at its construction year.
///
/// `owners` lists the known GenCo ids; a plant owned by anyone else is an error.
pub fn load_plant_registry(
    path: &Path,
    table: &CostTable,
    owners: &[String],
) -> Result<Vec<PowerPlant>, IngestError> {
    parse_plant_registry(read_file(path)?.as_bytes(), table, owners)
}

pub fn parse_plant_registry<R: std::io::Read>(
    input: R,
    table: &CostTable,
    owners: &[String],
) -> Result<Vec<PowerPlant>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| IngestError::MissingColumn(name.to_string()))
    };
    let cols = [
        col("plant_id")?,
        col("owner_id")?,
        col("type")?,
        col("capacity_mw")?,
        col("construction_year")?,
    ];
    let owners: HashSet<&str> = owners.iter().map(String::as_str).collect();
    let mut seen = HashSet::new();
    let mut plants = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let cell = |i: usize| rec.get(cols[i]).unwrap_or("");
        let row_err = |message: String| IngestError::Row { line, message };

        let id = cell(0).to_string();
        if id.is_empty() {
            return Err(row_err("empty plant_id".into()));
        }
        if !seen.insert(id.clone()) {
            return Err(IngestError::DuplicatePlant(id));
        }
        let owner = cell(1).to_string();
        if !owners.contains(owner.as_str()) {
            return Err(IngestError::DanglingOwner { plant: id, owner });
        }
        let plant_type = cell(2).parse()?;
        let capacity = parse_number(cell(3))
            .filter(|&c| c > 0.0)
            .ok_or_else(|| row_err(format!("capacity `{}` must be a positive number", cell(3))))?;
        let construction_year: i32 = cell(4)
            .parse()
            .map_err(|_| row_err(format!("bad construction_year `{}`", cell(4))))?;
        let costs = lookup_plant_costs(table, plant_type, capacity, construction_year)?.costs;
        plants.push(PowerPlant {
            id,
            owner,
            plant_type,
            capacity,
            construction_year,
            costs,
        });
    }
    Ok(plants)
}
