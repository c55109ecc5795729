//! Speculators' volatility choice and the return statistics it induces.
//!
//! Speculators maximise `U_S = a1 V - a2 V^2`. At their preferred volatility
//! `Vm` the wealthy gain `r1 Vm` with probability `q` and lose `r2 Vm`
//! otherwise.

use crate::error::{check_range, check_unit, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpeculatorParams {
    pub a1: f64,
    pub a2: f64,
    /// Probability that the wealthy come out ahead.
    pub q: f64,
    /// Gain per unit volatility.
    pub r1: f64,
    /// Loss per unit volatility.
    pub r2: f64,
}

impl SpeculatorParams {
    pub fn new(a1: f64, a2: f64, q: f64, r1: f64, r2: f64) -> Result<Self> {
        let sp = SpeculatorParams { a1, a2, q, r1, r2 };
        sp.validate()?;
        Ok(sp)
    }

    /// `a1, a2, r1 > 0`, `q in [0, 1]` and `r2 >= r1`.
    pub fn validate(&self) -> Result<()> {
        positive("a1", self.a1)?;
        positive("a2", self.a2)?;
        check_unit("q", self.q)?;
        positive("r1", self.r1)?;
        check_range("r2", self.r2, self.r1, f64::INFINITY, ">= r1")?;
        Ok(())
    }

    pub fn utility(&self, v: f64) -> f64 {
        self.a1 * v - self.a2 * v * v
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "> 0",
        })
    }
}

/// Vertex of the speculators' utility, `a1 / (2 a2)`.
pub fn optimal_volatility(sp: &SpeculatorParams) -> f64 {
    sp.a1 / (2.0 * sp.a2)
}

/// How the crypto variance is computed from the two-outcome model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum VarianceMode {
    /// Variance of the two-point outcome, `q (1 - q) ((r1 + r2) Vm)^2`.
    #[default]
    Exact,
    /// `q (1 - q) (r1 + r2) Vm`, linear in the volatility.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CryptoStats {
    #[cfg_attr(feature = "serde", serde(rename = "mY"))]
    pub m_y: f64,
    #[cfg_attr(feature = "serde", serde(rename = "sigY2"))]
    pub sig_y2: f64,
    /// `mY > 1`: the crypto is expected to gain, which the equilibrium
    /// solvers do not admit.
    pub mean_exceeds_one: bool,
}

pub fn crypto_stats(sp: &SpeculatorParams, vm: f64, mode: VarianceMode) -> Result<CryptoStats> {
    sp.validate()?;
    check_range("Vm", vm, 0.0, f64::INFINITY, ">= 0")?;
    let q = sp.q;
    let m_y = q * (1.0 + sp.r1 * vm) + (1.0 - q) * (1.0 - sp.r2 * vm);
    let spread = (sp.r1 + sp.r2) * vm;
    let sig_y2 = match mode {
        VarianceMode::Exact => q * (1.0 - q) * spread * spread,
        VarianceMode::AsPrinted => q * (1.0 - q) * spread,
    };
    Ok(CryptoStats {
        m_y,
        sig_y2,
        mean_exceeds_one: m_y > 1.0,
    })
}

/// [`crypto_stats`] at the speculators' optimal volatility.
pub fn derive_crypto_stats(sp: &SpeculatorParams, mode: VarianceMode) -> Result<CryptoStats> {
    crypto_stats(sp, optimal_volatility(sp), mode)
}
