//! Demand-based pricing for an asset with no fundamental value.

use crate::error::{check_range, check_unit, Error, Result};

/// Price per unit when all dollar demand is spread over a fixed supply.
pub fn equilibrium_price(demand_dollars: f64, units_outstanding: f64) -> Result<f64> {
    check_range("demand_dollars", demand_dollars, 0.0, f64::INFINITY, ">= 0")?;
    if !(units_outstanding > 0.0) {
        return Err(Error::ZeroDenominator {
            name: "units_outstanding",
        });
    }
    Ok(demand_dollars / units_outstanding)
}

/// Dollars flowing into the crypto when the wealthy allocate `x_star`.
pub fn aggregate_demand(wealth_total: f64, x_star: f64) -> Result<f64> {
    check_range("wealth_total", wealth_total, 0.0, f64::INFINITY, ">= 0")?;
    check_unit("x_star", x_star)?;
    Ok(wealth_total * x_star)
}

/// Total cash divided by total shares.
pub fn liquidity_value(total_cash: f64, total_shares: f64) -> Result<f64> {
    check_range("total_cash", total_cash, 0.0, f64::INFINITY, ">= 0")?;
    if !(total_shares > 0.0) {
        return Err(Error::ZeroDenominator {
            name: "total_shares",
        });
    }
    Ok(total_cash / total_shares)
}

/// Last trading period of the fifteen-period dividend schedule.
pub const SSW_LAST_PERIOD: u32 = 15;

/// Fundamental value `3.60 - 0.24 k` of the fifteen-period asset, in dollars.
///
/// Computed in cents so that period 15 yields exactly zero.
pub fn fundamental_value_ssw(period: u32) -> Result<f64> {
    if period > SSW_LAST_PERIOD {
        return Err(Error::Domain {
            name: "period",
            value: period as f64,
            expected: "0..=15",
        });
    }
    Ok(f64::from(360 - 24 * period) / 100.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MarketState {
    pub demand_dollars: f64,
    pub units_outstanding: f64,
    pub total_cash: f64,
    pub total_shares: f64,
}

impl MarketState {
    pub fn price(&self) -> Result<f64> {
        equilibrium_price(self.demand_dollars, self.units_outstanding)
    }

    pub fn liquidity_value(&self) -> Result<f64> {
        liquidity_value(self.total_cash, self.total_shares)
    }
}
