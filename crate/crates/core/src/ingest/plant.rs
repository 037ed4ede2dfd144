use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{IngestError, PlantCosts};

/// Generation technology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlantType {
    #[serde(rename = "CCGT")]
    Ccgt,
    Coal,
    Nuclear,
    #[serde(rename = "OCGT")]
    Ocgt,
    Offshore,
    Onshore,
    #[serde(rename = "PV")]
    Pv,
    Hydro,
    RecipDiesel,
    RecipGas,
}

impl PlantType {
    pub const ALL: [PlantType; 10] = [
        PlantType::Ccgt,
        PlantType::Coal,
        PlantType::Nuclear,
        PlantType::Ocgt,
        PlantType::Offshore,
        PlantType::Onshore,
        PlantType::Pv,
        PlantType::Hydro,
        PlantType::RecipDiesel,
        PlantType::RecipGas,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PlantType::Ccgt => "CCGT",
            PlantType::Coal => "Coal",
            PlantType::Nuclear => "Nuclear",
            PlantType::Ocgt => "OCGT",
            PlantType::Offshore => "Offshore",
            PlantType::Onshore => "Onshore",
            PlantType::Pv => "PV",
            PlantType::Hydro => "Hydro",
            PlantType::RecipDiesel => "RecipDiesel",
            PlantType::RecipGas => "RecipGas",
        }
    }

    /// Output follows an hourly capacity-factor series rather than being dispatchable at will.
    pub fn is_intermittent(self) -> bool {
        matches!(
            self,
            PlantType::Offshore | PlantType::Onshore | PlantType::Pv
        )
    }

    pub fn fuel(self) -> Option<Fuel> {
        match self {
            PlantType::Ccgt | PlantType::Ocgt | PlantType::RecipGas => Some(Fuel::Gas),
            PlantType::Coal => Some(Fuel::Coal),
            PlantType::Nuclear => Some(Fuel::Uranium),
            PlantType::RecipDiesel => Some(Fuel::Diesel),
            PlantType::Offshore | PlantType::Onshore | PlantType::Pv | PlantType::Hydro => None,
        }
    }
}

impl fmt::Display for PlantType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PlantType {
    type Err = IngestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        let t = match norm.as_str() {
            "ccgt" => PlantType::Ccgt,
            "coal" => PlantType::Coal,
            "nuclear" => PlantType::Nuclear,
            "ocgt" => PlantType::Ocgt,
            "offshore" => PlantType::Offshore,
            "onshore" => PlantType::Onshore,
            "pv" | "solar" => PlantType::Pv,
            "hydro" => PlantType::Hydro,
            "recipdiesel" | "recipenginediesel" => PlantType::RecipDiesel,
            "recipgas" | "recipenginegas" => PlantType::RecipGas,
            _ => return Err(IngestError::UnknownPlantType(s.to_string())),
        };
        Ok(t)
    }
}

/// Fuel burned by thermal technologies; keys the scenario's fuel price tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fuel {
    Gas,
    Coal,
    Uranium,
    Diesel,
}

impl Fuel {
    pub const ALL: [Fuel; 4] = [Fuel::Gas, Fuel::Coal, Fuel::Uranium, Fuel::Diesel];

    pub fn as_str(self) -> &'static str {
        match self {
            Fuel::Gas => "gas",
            Fuel::Coal => "coal",
            Fuel::Uranium => "uranium",
            Fuel::Diesel => "diesel",
        }
    }
}

impl fmt::Display for Fuel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A generator with resolved costs.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerPlant {
    pub id: String,
    pub owner: String,
    pub plant_type: PlantType,
    /// Nameplate capacity in MW.
    pub capacity: f64,
    pub construction_year: i32,
    pub costs: PlantCosts,
}

impl PowerPlant {
    pub fn is_intermittent(&self) -> bool {
        self.plant_type.is_intermittent()
    }

    pub fn age(&self, year: i32) -> i32 {
        year - self.construction_year
    }

    /// Operating lifetime in whole years.
    pub fn lifetime(&self) -> i32 {
        self.costs.operating_period.round() as i32
    }
}
