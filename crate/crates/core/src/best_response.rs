//! Stationarity curves of both players.
//!
//! `x1(p)` solves `dU_D/dp = 0` for the risk-averse government and `x2(p)`
//! solves `dU_W/dx = 0` for the wealthy. Both are returned unclamped; the
//! wealthy's constrained best response is [`xhat`].

use alloc::vec::Vec;

use crate::error::{check_unit, Error, Result};
use crate::model::ModelParams;
use crate::search::grid_point;

/// Default number of samples for [`sample_curve`].
pub const DEFAULT_CURVE_SAMPLES: usize = 2048;

pub(crate) fn require_government(params: &ModelParams) -> Result<()> {
    params.validate()?;
    if params.k > 0.0 {
        Ok(())
    } else {
        Err(Error::DegenerateGame)
    }
}

pub(crate) fn require_wealthy(params: &ModelParams) -> Result<()> {
    params.validate()?;
    if !(params.d2 > 0.0) {
        return Err(Error::RiskNeutralWealthy);
    }
    if params.cov_yf != 0.0 {
        return Err(Error::CorrelatedAssets {
            cov_yf: params.cov_yf,
        });
    }
    Ok(())
}

/// Government stationarity curve `x1(p) = 1 - 2 dD2 p / k`.
pub fn x1(params: &ModelParams, p: f64) -> Result<f64> {
    require_government(params)?;
    check_unit("p", p)?;
    Ok(x1_at(params, p))
}

/// Wealthy stationarity curve
/// `x2(p) = [sigF2 + (mY - mF) / (2 d2)] / [sigF2 + sigY2]`.
pub fn x2_raw(params: &ModelParams, p: f64) -> Result<f64> {
    require_wealthy(params)?;
    check_unit("p", p)?;
    Ok(x2_at(params, p))
}

/// The wealthy's best response on `[0, 1]`: `x2` clamped to the unit
/// interval, which is exact because `U_W` is concave in `x`.
pub fn xhat(params: &ModelParams, p: f64) -> Result<f64> {
    require_wealthy(params)?;
    check_unit("p", p)?;
    Ok(xhat_at(params, p))
}

/// Numerator of `x2'(p)`; its sign is the sign of the slope.
///
/// With `c1 = (1 - mY)/(2 d2)`, `c2 = k/(2 d2)`, `c3 = sigY2` this is
/// `c2 k^2 p^2 + c2 c3 + (c1 + c3) k^2 (1 - 2p)`.
pub fn x2_derivative_numerator(params: &ModelParams, p: f64) -> Result<f64> {
    params.validate()?;
    if !(params.d2 > 0.0) {
        return Err(Error::RiskNeutralWealthy);
    }
    check_unit("p", p)?;
    Ok(x2_numerator_at(params, p))
}

/// The printed uniqueness test `(1 + 2 d2)(1 - mY) <= k`.
pub fn condpos_holds(params: &ModelParams) -> bool {
    (1.0 + 2.0 * params.d2) * (1.0 - params.m_y) <= params.k
}

/// `c1 + c3 <= c2`, i.e. `A <= k`: the condition under which the numerator
/// of `x2'` stays nonnegative on all of `[0, 1]`.
pub fn monotone_condition_holds(params: &ModelParams) -> bool {
    params.attractiveness() <= params.k
}

pub(crate) fn x1_at(params: &ModelParams, p: f64) -> f64 {
    1.0 - 2.0 * params.dd2 * p / params.k
}

pub(crate) fn x2_at(params: &ModelParams, p: f64) -> f64 {
    let k = params.k;
    let f = k * k * p * (1.0 - p);
    (f + (params.m_y - 1.0 + k * p) / (2.0 * params.d2)) / (f + params.sig_y2)
}

pub(crate) fn xhat_at(params: &ModelParams, p: f64) -> f64 {
    x2_at(params, p).clamp(0.0, 1.0)
}

pub(crate) fn x2_numerator_at(params: &ModelParams, p: f64) -> f64 {
    let k2 = params.k * params.k;
    let c1 = (1.0 - params.m_y) / (2.0 * params.d2);
    let c2 = params.k / (2.0 * params.d2);
    let c3 = params.sig_y2;
    c2 * k2 * p * p + c2 * c3 + (c1 + c3) * k2 * (1.0 - 2.0 * p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CurveKind {
    GovernmentStationarity,
    WealthyStationarity,
    WealthyClipped,
}

/// A best-response curve sampled on a uniform grid over `p in [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BestResponseCurve {
    pub kind: CurveKind,
    pub samples: Vec<(f64, f64)>,
}

pub fn sample_curve(params: &ModelParams, kind: CurveKind, n: usize) -> Result<BestResponseCurve> {
    if n < 2 {
        return Err(Error::Domain {
            name: "samples",
            value: n as f64,
            expected: ">= 2",
        });
    }
    let eval: fn(&ModelParams, f64) -> f64 = match kind {
        CurveKind::GovernmentStationarity => {
            require_government(params)?;
            x1_at
        }
        CurveKind::WealthyStationarity => {
            require_wealthy(params)?;
            x2_at
        }
        CurveKind::WealthyClipped => {
            require_wealthy(params)?;
            xhat_at
        }
    };
    let samples = (0..n)
        .map(|i| {
            let p = grid_point(0.0, 1.0, i, n);
            (p, eval(params, p))
        })
        .collect();
    Ok(BestResponseCurve { kind, samples })
}
