use std::cmp::Ordering;

use super::MarketError;

#[derive(Debug, Clone, PartialEq)]
pub struct Bid {
    pub plant_id: String,
    /// Offer price per MWh.
    pub price: f64,
    /// MW offered this hour.
    pub quantity: f64,
}

impl Bid {
    pub fn new(plant_id: impl Into<String>, price: f64, quantity: f64) -> Self {
        Bid { plant_id: plant_id.into(), price, quantity }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClearingResult {
    pub demand: f64,
    pub clearing_price: f64,
    /// MW accepted from each bid, aligned with the input slice.
    pub dispatch: Vec<f64>,
    pub served: f64,
    pub unserved: f64,
}

fn merit_order(a: &Bid, b: &Bid) -> Ordering {
    a.price
        .total_cmp(&b.price)
        .then_with(|| b.quantity.total_cmp(&a.quantity))
        .then_with(|| a.plant_id.cmp(&b.plant_id))
}

/// Accepts bids cheapest first until `demand` is met. Every accepted MW is paid
/// the price of the marginal accepted bid; a shortfall sets the price to `price_cap`.
pub fn clear_market(bids: &[Bid], demand: f64, price_cap: f64) -> Result<ClearingResult, MarketError> {
    if !(demand.is_finite() && demand >= 0.0) {
        return Err(MarketError::InvalidDemand(demand));
    }
    for b in bids {
        if !b.price.is_finite() {
            return Err(MarketError::InvalidBid {
                plant_id: b.plant_id.clone(),
                reason: format!("price {} is not finite", b.price),
            });
        }
        if !(b.quantity.is_finite() && b.quantity >= 0.0) {
            return Err(MarketError::InvalidBid {
                plant_id: b.plant_id.clone(),
                reason: format!("quantity {} must be finite and >= 0", b.quantity),
            });
        }
    }

    let mut dispatch = vec![0.0; bids.len()];
    if demand == 0.0 {
        return Ok(ClearingResult { demand, clearing_price: 0.0, dispatch, served: 0.0, unserved: 0.0 });
    }

    let mut order: Vec<usize> = (0..bids.len()).collect();
    order.sort_by(|&a, &b| merit_order(&bids[a], &bids[b]));

    let mut remaining = demand;
    let mut marginal = None;
    for i in order {
        if remaining == 0.0 {
            break;
        }
        let q = bids[i].quantity;
        if q == 0.0 {
            continue;
        }
        let take = q.min(remaining);
        dispatch[i] = take;
        remaining = if take == remaining { 0.0 } else { remaining - take };
        marginal = Some(bids[i].price);
    }

    let unserved = remaining;
    let clearing_price = if unserved > 0.0 { price_cap } else { marginal.unwrap_or(0.0) };
    Ok(ClearingResult {
        demand,
        clearing_price,
        served: demand - unserved,
        dispatch,
        unserved,
    })
}
