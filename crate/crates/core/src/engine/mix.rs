use std::fmt;
use std::str::FromStr;

use crate::ingest::PlantType;

/// Technology buckets used when reporting and scoring the generation mix.
/// Offshore and onshore wind share a bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MixCategory {
    Wind,
    Nuclear,
    Solar,
    Ccgt,
    Coal,
    Ocgt,
    Hydro,
    Reciprocating,
}

impl MixCategory {
    pub const ALL: [MixCategory; 8] = [
        MixCategory::Wind,
        MixCategory::Nuclear,
        MixCategory::Solar,
        MixCategory::Ccgt,
        MixCategory::Coal,
        MixCategory::Ocgt,
        MixCategory::Hydro,
        MixCategory::Reciprocating,
    ];

    /// The five buckets the calibration objective compares.
    pub const SCORED: [MixCategory; 5] = [
        MixCategory::Wind,
        MixCategory::Nuclear,
        MixCategory::Solar,
        MixCategory::Ccgt,
        MixCategory::Coal,
    ];

    pub fn of(t: PlantType) -> Self {
        match t {
            PlantType::Offshore | PlantType::Onshore => MixCategory::Wind,
            PlantType::Nuclear => MixCategory::Nuclear,
            PlantType::Pv => MixCategory::Solar,
            PlantType::Ccgt => MixCategory::Ccgt,
            PlantType::Coal => MixCategory::Coal,
            PlantType::Ocgt => MixCategory::Ocgt,
            PlantType::Hydro => MixCategory::Hydro,
            PlantType::RecipDiesel | PlantType::RecipGas => MixCategory::Reciprocating,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MixCategory::Wind => "wind",
            MixCategory::Nuclear => "nuclear",
            MixCategory::Solar => "solar",
            MixCategory::Ccgt => "ccgt",
            MixCategory::Coal => "coal",
            MixCategory::Ocgt => "ocgt",
            MixCategory::Hydro => "hydro",
            MixCategory::Reciprocating => "reciprocating",
        }
    }
}

impl fmt::Display for MixCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MixCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        match key.as_str() {
            "wind" | "offshore" | "onshore" => Ok(MixCategory::Wind),
            "nuclear" => Ok(MixCategory::Nuclear),
            "solar" | "pv" => Ok(MixCategory::Solar),
            "ccgt" | "gas" => Ok(MixCategory::Ccgt),
            "coal" => Ok(MixCategory::Coal),
            "ocgt" => Ok(MixCategory::Ocgt),
            "hydro" => Ok(MixCategory::Hydro),
            "reciprocating" | "recipdiesel" | "recipgas" => Ok(MixCategory::Reciprocating),
            _ => Err(format!("unknown mix type `{s}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wind_is_grouped() {
        assert_eq!(MixCategory::of(PlantType::Offshore), MixCategory::Wind);
        assert_eq!(MixCategory::of(PlantType::Onshore), MixCategory::Wind);
        for c in MixCategory::ALL {
            assert_eq!(c.as_str().parse::<MixCategory>().unwrap(), c);
        }
        assert!("peat".parse::<MixCategory>().is_err());
    }
}
