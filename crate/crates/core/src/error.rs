use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by parameter validation and solver preconditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A scalar fell outside its admissible range (NaN included).
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// `k = 0`: nothing can be seized, so the government's curve is undefined.
    DegenerateGame,
    /// `d2 = 0`: the wealthy stationary point does not exist.
    RiskNeutralWealthy,
    /// `dD2 = 0`: the simultaneous game has no interior government maximum.
    RiskNeutralGovernment,
    /// The closed-form solvers only cover uncorrelated assets.
    CorrelatedAssets { cov_yf: f64 },
    /// A quotient was requested with a zero (or negative) denominator.
    ZeroDenominator { name: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                name,
                value,
                expected,
            } => write!(f, "{name} = {value} is out of range (expected {expected})"),
            Error::DegenerateGame => f.write_str("k = 0: the government's best response is undefined"),
            Error::RiskNeutralWealthy => {
                f.write_str("d2 = 0: the wealthy stationary allocation is undefined")
            }
            Error::RiskNeutralGovernment => {
                f.write_str("dD2 = 0: the simultaneous game needs a risk-averse government")
            }
            Error::CorrelatedAssets { cov_yf } => write!(
                f,
                "covYF = {cov_yf}: closed-form solvers require uncorrelated assets"
            ),
            Error::ZeroDenominator { name } => write!(f, "{name} must be strictly positive"),
        }
    }
}

impl core::error::Error for Error {}

/// Checks `lo <= value <= hi`, rejecting NaN.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64, expected: &'static str) -> Result<f64> {
    if value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            expected,
        })
    }
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    check_range(name, value, 0.0, 1.0, "[0, 1]")
}
