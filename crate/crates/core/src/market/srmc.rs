use super::MarketError;
use crate::ingest::{PlantCosts, PlantType};

/// Short-run marginal cost per MWh of output.
///
/// Fuel-burning types pay `(fuel_price + carbon_price·emission_factor) / η`
/// on top of variable O&M; other types pay variable O&M only, and their
/// `fuel_price` is ignored.
pub fn srmc(
    plant_type: PlantType,
    costs: &PlantCosts,
    fuel_price: Option<f64>,
    carbon_price: f64,
    emission_factor: f64,
) -> Result<f64, MarketError> {
    let Some(fuel) = plant_type.fuel() else {
        return Ok(costs.variable_om);
    };
    let price = fuel_price.ok_or(MarketError::MissingFuelPrice { plant_type, fuel })?;
    let eta = costs.efficiency;
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(MarketError::InvalidEfficiency { plant_type, efficiency: eta });
    }
    Ok(price / eta + carbon_price * emission_factor / eta + costs.variable_om)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{lookup_plant_costs, CostTable};
    use approx::assert_relative_eq;

    fn costs(eta: f64, vc: f64) -> PlantCosts {
        PlantCosts { efficiency: eta, variable_om: vc, ..PlantCosts::default() }
    }

    #[test]
    fn wind_pays_variable_om_only() {
        let c = costs(0.0, 7.0);
        assert_eq!(srmc(PlantType::Offshore, &c, Some(99.0), 80.0, 0.4).unwrap(), 7.0);
        assert_eq!(srmc(PlantType::Onshore, &c, None, 0.0, 0.0).unwrap(), 7.0);
    }

    #[test]
    fn ccgt_from_table() {
        let table = CostTable::bundled();
        let c = lookup_plant_costs(&table, PlantType::Ccgt, 1200.0, 2018).unwrap().costs;
        let v = srmc(PlantType::Ccgt, &c, Some(20.0), 0.0, 0.0).unwrap();
        assert_relative_eq!(v, 20.0 / 0.54 + 3.0, max_relative = 1e-12);
        assert!((v - 40.04).abs() < 0.01);
    }

    #[test]
    fn coal_with_carbon() {
        let v = srmc(PlantType::Coal, &costs(0.32, 5.0), Some(10.0), 25.0, 0.34).unwrap();
        assert_relative_eq!(v, 10.0 / 0.32 + 25.0 * 0.34 / 0.32 + 5.0, max_relative = 1e-12);
        assert!((v - 62.81).abs() < 0.01);
    }

    #[test]
    fn missing_fuel_price() {
        assert!(matches!(
            srmc(PlantType::Ccgt, &costs(0.5, 1.0), None, 0.0, 0.0),
            Err(MarketError::MissingFuelPrice { .. })
        ));
        assert!(matches!(
            srmc(PlantType::Coal, &costs(0.0, 1.0), Some(5.0), 0.0, 0.0),
            Err(MarketError::InvalidEfficiency { .. })
        ));
    }
}
