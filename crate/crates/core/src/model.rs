//! Parameters and the mean-variance utilities of both players.
//!
//! Money held in the home currency keeps a fraction `1 - k` of its value
//! with probability `p` (the government seizes) and all of it otherwise. The
//! wealthy hold a fraction `x` in the cryptocurrency, whose outcome has mean
//! `m_y` and variance `sig_y2`.

use crate::error::{check_range, check_unit, Error, Result};

/// Parameter vector of the game.
///
/// Risk aversions are stored squared: a wealthy risk aversion `d = 2` is
/// `d2 = 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModelParams {
    /// Fraction of home-currency wealth seized on the bad event.
    pub k: f64,
    /// Wealthy risk aversion (squared).
    pub d2: f64,
    /// Government risk aversion (squared).
    #[cfg_attr(feature = "serde", serde(rename = "dD2"))]
    pub dd2: f64,
    /// Expected terminal wealth per unit held in the cryptocurrency.
    #[cfg_attr(feature = "serde", serde(rename = "mY"))]
    pub m_y: f64,
    /// Variance of the cryptocurrency outcome.
    #[cfg_attr(feature = "serde", serde(rename = "sigY2"))]
    pub sig_y2: f64,
    /// Covariance between the cryptocurrency and home-currency outcomes.
    #[cfg_attr(feature = "serde", serde(rename = "covYF", default))]
    pub cov_yf: f64,
}

impl ModelParams {
    /// Builds validated parameters with uncorrelated assets.
    pub fn new(k: f64, d2: f64, dd2: f64, m_y: f64, sig_y2: f64) -> Result<Self> {
        let params = ModelParams {
            k,
            d2,
            dd2,
            m_y,
            sig_y2,
            cov_yf: 0.0,
        };
        params.validate()?;
        Ok(params)
    }

    /// Same as [`ModelParams::new`] but taking unsquared risk aversions.
    pub fn from_risk_aversion(k: f64, d: f64, d_d: f64, m_y: f64, sig_y2: f64) -> Result<Self> {
        check_range("d", d, 0.0, f64::INFINITY, ">= 0")?;
        check_range("d_D", d_d, 0.0, f64::INFINITY, ">= 0")?;
        Self::new(k, d * d, d_d * d_d, m_y, sig_y2)
    }

    pub fn with_covariance(mut self, cov_yf: f64) -> Result<Self> {
        self.cov_yf = cov_yf;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("k", self.k)?;
        check_range("d2", self.d2, 0.0, f64::INFINITY, ">= 0")?;
        check_range("dD2", self.dd2, 0.0, f64::INFINITY, ">= 0")?;
        check_unit("mY", self.m_y)?;
        if !(self.sig_y2 > 0.0 && self.sig_y2.is_finite()) {
            return Err(Error::Domain {
                name: "sigY2",
                value: self.sig_y2,
                expected: "> 0",
            });
        }
        if !self.cov_yf.is_finite() {
            return Err(Error::Domain {
                name: "covYF",
                value: self.cov_yf,
                expected: "finite",
            });
        }
        Ok(())
    }

    /// Mean and variance of one unit held in the home currency.
    pub fn home_stats(&self, p: f64) -> Result<HomeStats> {
        check_unit("p", p)?;
        Ok(self.home_stats_at(p))
    }

    /// Wealthy utility `U_W = m - d2 * var` of the `(1 - x, x)` portfolio.
    pub fn utility_w(&self, p: f64, x: f64) -> Result<f64> {
        check_unit("p", p)?;
        check_unit("x", x)?;
        Ok(self.utility_w_at(p, x))
    }

    /// Government utility `(1 - x) k p`: the expected amount seized.
    pub fn utility_d_linear(&self, p: f64, x: f64) -> Result<f64> {
        check_unit("p", p)?;
        check_unit("x", x)?;
        Ok(self.utility_d_linear_at(p, x))
    }

    /// Government utility with a risk penalty, `(1 - x) k p - dD2 p^2`.
    pub fn utility_d_risk_averse(&self, p: f64, x: f64) -> Result<f64> {
        check_unit("p", p)?;
        check_unit("x", x)?;
        Ok(self.utility_d_risk_averse_at(p, x))
    }

    /// `A = 2 d2 sigY2 + 1 - mY`: combined risk and expected loss of holding
    /// the cryptocurrency. Larger means less attractive.
    pub fn attractiveness(&self) -> f64 {
        2.0 * self.d2 * self.sig_y2 + 1.0 - self.m_y
    }

    /// Curvature of `U_W` in `x`, `-2 d2 (sigY2 + sigF2 - 2 covYF)`.
    pub fn wealthy_curvature(&self, p: f64) -> f64 {
        let home = self.home_stats_at(p);
        -2.0 * self.d2 * (self.sig_y2 + home.sig_f2 - 2.0 * self.cov_yf)
    }

    /// Curvature of the risk-averse `U_D` in `p`.
    pub fn government_curvature(&self) -> f64 {
        -2.0 * self.dd2
    }

    /// Bundles `(p, x)` with both players' utilities (risk-averse `U_D`).
    pub fn strategy_point(&self, p: f64, x: f64) -> Result<StrategyPoint> {
        check_unit("p", p)?;
        check_unit("x", x)?;
        Ok(self.point_at(p, x))
    }

    pub(crate) fn point_at(&self, p: f64, x: f64) -> StrategyPoint {
        StrategyPoint {
            p,
            x,
            u_w: self.utility_w_at(p, x),
            u_d: self.utility_d_risk_averse_at(p, x),
        }
    }

    pub(crate) fn point_linear_at(&self, p: f64, x: f64) -> StrategyPoint {
        StrategyPoint {
            p,
            x,
            u_w: self.utility_w_at(p, x),
            u_d: self.utility_d_linear_at(p, x),
        }
    }

    pub(crate) fn home_stats_at(&self, p: f64) -> HomeStats {
        HomeStats {
            m_f: 1.0 - self.k * p,
            sig_f2: self.k * self.k * p * (1.0 - p),
        }
    }

    pub(crate) fn utility_w_at(&self, p: f64, x: f64) -> f64 {
        let HomeStats { m_f, sig_f2 } = self.home_stats_at(p);
        let y = 1.0 - x;
        let mean = x * self.m_y + y * m_f;
        let var = x * x * self.sig_y2 + y * y * sig_f2 + 2.0 * x * y * self.cov_yf;
        mean - self.d2 * var
    }

    pub(crate) fn utility_d_linear_at(&self, p: f64, x: f64) -> f64 {
        (1.0 - x) * self.k * p
    }

    pub(crate) fn utility_d_risk_averse_at(&self, p: f64, x: f64) -> f64 {
        self.utility_d_linear_at(p, x) - self.dd2 * p * p
    }
}

/// Mean and variance of the home-currency outcome at seizure probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomeStats {
    #[cfg_attr(feature = "serde", serde(rename = "mF"))]
    pub m_f: f64,
    #[cfg_attr(feature = "serde", serde(rename = "sigF2"))]
    pub sig_f2: f64,
}

/// A strategy pair with both utilities attached.
///
/// `u_d` is the government utility of the game that produced the point:
/// risk-averse for the simultaneous game, linear for the leader-follower one.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StrategyPoint {
    pub p: f64,
    pub x: f64,
    #[cfg_attr(feature = "serde", serde(rename = "uW"))]
    pub u_w: f64,
    #[cfg_attr(feature = "serde", serde(rename = "uD"))]
    pub u_d: f64,
}
