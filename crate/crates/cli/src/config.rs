//! Key-value parameter files and the run configuration built from them.
//!
//! A config is one `key = value` pair per line; `#` starts a comment. The
//! same pairs can be given on the command line with `--set key=value`, which
//! override the file.

use std::collections::BTreeMap;
use std::fmt;

use cryptoeq_core::oracle::GridSpec;
use cryptoeq_core::speculator::{derive_crypto_stats, SpeculatorParams, VarianceMode};
use cryptoeq_core::{ModelParams, SolverOptions, StackelbergOptions};

/// Where a value came from, for error messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(usize),
    /// The n-th `--set` flag, counting from 1.
    Flag(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(n) => write!(f, "line {n}"),
            Location::Flag(n) => write!(f, "--set #{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{at}: expected `key = value`, found {text:?}")]
    Syntax { at: Location, text: String },
    #[error("{at}: unknown key {key:?}")]
    UnknownKey { at: Location, key: String },
    #[error("{at}: {key}: cannot parse {text:?} as a number")]
    Number { at: Location, key: String, text: String },
    #[error("{at}: {key} = {value} is out of range (expected {expected})")]
    Domain {
        at: Location,
        key: String,
        value: f64,
        expected: &'static str,
    },
    #[error("{at}: {key} conflicts with {other} given at {other_at}")]
    Conflict {
        at: Location,
        key: String,
        other: String,
        other_at: Location,
    },
    #[error("missing required key {key}")]
    Missing { key: &'static str },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// Canonical parameter slots. Spellings map onto these in [`Key::parse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Key {
    K,
    D2,
    DD2,
    MY,
    SigmaY2,
    CovYF,
    A1,
    A2,
    Q,
    R1,
    R2,
    WealthTotal,
    Units,
}

/// How a spelling feeds its slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    AsIs,
    /// Risk aversions given unsquared are squared on ingestion.
    Squared,
}

impl Key {
    pub fn parse(name: &str) -> Option<(Key, Scale)> {
        Some(match name {
            "k" => (Key::K, Scale::AsIs),
            "d" => (Key::D2, Scale::Squared),
            "d2" => (Key::D2, Scale::AsIs),
            "d_D" => (Key::DD2, Scale::Squared),
            "dD2" => (Key::DD2, Scale::AsIs),
            "m_Y" => (Key::MY, Scale::AsIs),
            "sigma_Y2" => (Key::SigmaY2, Scale::AsIs),
            "cov_YF" => (Key::CovYF, Scale::AsIs),
            "a1" => (Key::A1, Scale::AsIs),
            "a2" => (Key::A2, Scale::AsIs),
            "q" => (Key::Q, Scale::AsIs),
            "r1" => (Key::R1, Scale::AsIs),
            "r2" => (Key::R2, Scale::AsIs),
            "wealth_total" => (Key::WealthTotal, Scale::AsIs),
            "units" => (Key::Units, Scale::AsIs),
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Key::K => "k",
            Key::D2 => "d2",
            Key::DD2 => "dD2",
            Key::MY => "m_Y",
            Key::SigmaY2 => "sigma_Y2",
            Key::CovYF => "cov_YF",
            Key::A1 => "a1",
            Key::A2 => "a2",
            Key::Q => "q",
            Key::R1 => "r1",
            Key::R2 => "r2",
            Key::WealthTotal => "wealth_total",
            Key::Units => "units",
        }
    }

    /// Admissible range of the raw (unsquared) value.
    fn check(self, v: f64) -> Result<(), &'static str> {
        let ok = match self {
            Key::K | Key::MY | Key::Q => (0.0..=1.0).contains(&v),
            Key::D2 | Key::DD2 | Key::WealthTotal => v >= 0.0 && v.is_finite(),
            Key::SigmaY2 | Key::A1 | Key::A2 | Key::R1 | Key::R2 | Key::Units => v > 0.0 && v.is_finite(),
            Key::CovYF => v.is_finite(),
        };
        if ok {
            return Ok(());
        }
        Err(match self {
            Key::K | Key::MY | Key::Q => "in [0, 1]",
            Key::D2 | Key::DD2 | Key::WealthTotal => ">= 0",
            Key::CovYF => "finite",
            _ => "> 0",
        })
    }

    fn is_speculator(self) -> bool {
        matches!(self, Key::A1 | Key::A2 | Key::Q | Key::R1 | Key::R2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    /// Value after scaling (squared for `d` and `d_D`).
    pub value: f64,
    pub spelling: &'static str,
    pub at: Location,
}

/// Validated values keyed by slot.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Values {
    entries: BTreeMap<Key, Entry>,
}

fn spelling_of(name: &str) -> &'static str {
    const ALL: [&str; 15] = [
        "k", "d", "d2", "d_D", "dD2", "m_Y", "sigma_Y2", "cov_YF", "a1", "a2", "q", "r1", "r2", "wealth_total", "units",
    ];
    ALL.iter().copied().find(|s| *s == name).expect("spelling was parsed")
}

/// Parses one `key = value` assignment into its slot and scaled value.
pub fn parse_assignment(text: &str, at: Location) -> Result<Option<(Key, Entry)>, ConfigError> {
    let body = text.split('#').next().unwrap_or("").trim();
    if body.is_empty() {
        return Ok(None);
    }
    let (name, raw) = body.split_once('=').ok_or_else(|| ConfigError::Syntax {
        at,
        text: text.trim().to_string(),
    })?;
    let (name, raw) = (name.trim(), raw.trim());
    let (key, scale) = Key::parse(name).ok_or_else(|| ConfigError::UnknownKey {
        at,
        key: name.to_string(),
    })?;
    let value: f64 = raw.parse().map_err(|_| ConfigError::Number {
        at,
        key: name.to_string(),
        text: raw.to_string(),
    })?;
    let domain = |expected| ConfigError::Domain {
        at,
        key: name.to_string(),
        value,
        expected,
    };
    key.check(value).map_err(domain)?;
    let value = match scale {
        Scale::AsIs => value,
        Scale::Squared => value * value,
    };
    Ok(Some((
        key,
        Entry {
            value,
            spelling: spelling_of(name),
            at,
        },
    )))
}

impl Values {
    /// Parses a whole config document. A slot may be set only once.
    pub fn parse(text: &str) -> Result<Values, ConfigError> {
        let mut values = Values::default();
        for (i, line) in text.lines().enumerate() {
            if let Some((key, entry)) = parse_assignment(line, Location::Line(i + 1))? {
                if let Some(prev) = values.entries.get(&key) {
                    return Err(ConfigError::Conflict {
                        at: entry.at,
                        key: entry.spelling.to_string(),
                        other: prev.spelling.to_string(),
                        other_at: prev.at,
                    });
                }
                values.entries.insert(key, entry);
            }
        }
        Ok(values)
    }

    /// Applies `--set` overrides in order. Overrides replace file values; two
    /// flags naming the same slot conflict.
    pub fn apply_overrides<S: AsRef<str>>(&mut self, sets: &[S]) -> Result<(), ConfigError> {
        let mut seen: BTreeMap<Key, Entry> = BTreeMap::new();
        for (i, text) in sets.iter().enumerate() {
            let at = Location::Flag(i + 1);
            let (key, entry) = parse_assignment(text.as_ref(), at)?.ok_or_else(|| ConfigError::Syntax {
                at,
                text: text.as_ref().to_string(),
            })?;
            if let Some(prev) = seen.get(&key) {
                return Err(ConfigError::Conflict {
                    at,
                    key: entry.spelling.to_string(),
                    other: prev.spelling.to_string(),
                    other_at: prev.at,
                });
            }
            seen.insert(key, entry);
            self.entries.insert(key, entry);
        }
        Ok(())
    }

    pub fn get(&self, key: Key) -> Option<f64> {
        self.entries.get(&key).map(|e| e.value)
    }

    pub fn entry(&self, key: Key) -> Option<&Entry> {
        self.entries.get(&key)
    }

    /// Replaces a slot, as a sweep does at each grid value.
    pub fn set(&mut self, key: Key, value: f64, at: Location) {
        let spelling = key.name();
        self.entries.insert(key, Entry { value, spelling, at });
    }

    fn require(&self, key: Key) -> Result<f64, ConfigError> {
        self.get(key).ok_or(ConfigError::Missing { key: key.name() })
    }

    pub fn has_speculator(&self) -> bool {
        self.entries.keys().any(|k| k.is_speculator())
    }

    /// Speculator inputs, if any of their keys is present.
    pub fn speculator(&self) -> Result<Option<SpeculatorParams>, ConfigError> {
        if !self.has_speculator() {
            return Ok(None);
        }
        let sp = SpeculatorParams {
            a1: self.require(Key::A1)?,
            a2: self.require(Key::A2)?,
            q: self.require(Key::Q)?,
            r1: self.require(Key::R1)?,
            r2: self.require(Key::R2)?,
        };
        if sp.r2 < sp.r1 {
            let r2 = self.entry(Key::R2).expect("required above");
            return Err(ConfigError::Domain {
                at: r2.at,
                key: "r2".into(),
                value: sp.r2,
                expected: ">= r1",
            });
        }
        sp.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(Some(sp))
    }

    /// The game parameters. Speculator keys, when present, supply `m_Y`
    /// and `sigma_Y2`, which must then not be given directly.
    pub fn model(&self, mode: VarianceMode) -> Result<ModelParams, ConfigError> {
        let (m_y, sig_y2) = match self.speculator()? {
            Some(sp) => {
                for key in [Key::MY, Key::SigmaY2] {
                    if let Some(e) = self.entry(key) {
                        let q = self.entry(Key::Q).or(self.entry(Key::A1)).expect("speculator present");
                        return Err(ConfigError::Conflict {
                            at: e.at,
                            key: e.spelling.to_string(),
                            other: "speculator keys".into(),
                            other_at: q.at,
                        });
                    }
                }
                let stats = derive_crypto_stats(&sp, mode).map_err(|e| ConfigError::Invalid(e.to_string()))?;
                if stats.mean_exceeds_one {
                    return Err(ConfigError::Invalid(format!(
                        "derived m_Y = {} exceeds 1; the game requires m_Y <= 1",
                        stats.m_y
                    )));
                }
                if !(stats.sig_y2 > 0.0) {
                    return Err(ConfigError::Invalid(format!(
                        "derived sigma_Y2 = {} must be > 0",
                        stats.sig_y2
                    )));
                }
                (stats.m_y, stats.sig_y2)
            }
            None => (self.require(Key::MY)?, self.require(Key::SigmaY2)?),
        };
        let params = ModelParams {
            k: self.require(Key::K)?,
            d2: self.require(Key::D2)?,
            dd2: self.require(Key::DD2)?,
            m_y,
            sig_y2,
            cov_yf: self.get(Key::CovYF).unwrap_or(0.0),
        };
        params.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(params)
    }

    /// `(wealth_total, units)` for pricing.
    pub fn market(&self) -> Result<(f64, f64), ConfigError> {
        Ok((self.require(Key::WealthTotal)?, self.require(Key::Units)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Nash,
    Stackelberg,
    Conditions,
    Sweep,
    Price,
    Speculator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// What a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepTarget {
    /// Sample the best-response curves over `p`.
    P,
    Param { key: Key, scale: Scale },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub target: SweepTarget,
    pub name: &'static str,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepAxis {
    /// Parses `param:start:stop:steps`.
    pub fn parse(text: &str) -> Result<SweepAxis, ConfigError> {
        let bad = |why: &str| ConfigError::Invalid(format!("--sweep {text:?}: {why}"));
        let parts: Vec<&str> = text.split(':').collect();
        let [name, start, stop, steps] = parts[..] else {
            return Err(bad("expected param:start:stop:steps"));
        };
        let (target, name) = if name == "p" {
            (SweepTarget::P, "p")
        } else {
            let (key, scale) = Key::parse(name).ok_or_else(|| bad("unknown parameter"))?;
            (SweepTarget::Param { key, scale }, spelling_of(name))
        };
        let start: f64 = start.parse().map_err(|_| bad("start is not a number"))?;
        let stop: f64 = stop.parse().map_err(|_| bad("stop is not a number"))?;
        let steps: usize = steps.parse().map_err(|_| bad("steps is not a count"))?;
        if steps < 2 {
            return Err(bad("steps must be >= 2"));
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err(bad("bounds must be finite"));
        }
        if target == SweepTarget::P && !((0.0..=1.0).contains(&start) && (0.0..=1.0).contains(&stop)) {
            return Err(bad("p bounds must lie in [0, 1]"));
        }
        Ok(SweepAxis {
            target,
            name,
            start,
            stop,
            steps,
        })
    }

    /// The i-th sweep value; both endpoints are hit exactly.
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.stop
        } else {
            self.start + (self.stop - self.start) * (i as f64 / (self.steps - 1) as f64)
        }
    }
}

/// Everything a run needs, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub values: Values,
    pub variance_mode: VarianceMode,
    pub sweep: Option<SweepAxis>,
    pub format: OutputFormat,
    pub solver: SolverOptions,
    pub stackelberg: StackelbergOptions,
    /// Brute-force cross-check grid; `None` when the oracle is off.
    pub oracle: Option<GridSpec>,
}

impl RunConfig {
    /// Checks the cross-field rules: a sweep axis exactly for `sweep`, and
    /// every key the command needs.
    pub fn validate(&self) -> Result<(), ConfigError> {
        match (self.command, &self.sweep) {
            (Command::Sweep, None) => return Err(ConfigError::Invalid("sweep needs --sweep param:start:stop:steps".into())),
            (Command::Sweep, Some(_)) => {}
            (_, Some(_)) => return Err(ConfigError::Invalid("--sweep is only valid with the sweep command".into())),
            (_, None) => {}
        }
        match self.command {
            Command::Speculator => {
                if self.values.speculator()?.is_none() {
                    return Err(ConfigError::Missing { key: "a1" });
                }
            }
            Command::Price => {
                self.values.model(self.variance_mode)?;
                self.values.market()?;
            }
            Command::Sweep => {
                // Sweeping a key supplies it, so it need not be in the file.
                let mut probe = self.values.clone();
                if let Some(SweepAxis {
                    target: SweepTarget::Param { key, scale },
                    start,
                    ..
                }) = self.sweep
                {
                    let v = match scale {
                        Scale::AsIs => start,
                        Scale::Squared => start * start,
                    };
                    probe.set(key, v, Location::Flag(0));
                    if (key == Key::MY || key == Key::SigmaY2) && probe.has_speculator() {
                        return Err(ConfigError::Invalid(format!(
                            "cannot sweep {} while speculator keys derive it",
                            key.name()
                        )));
                    }
                }
                Self::require_model_keys(&probe)?;
            }
            _ => {
                self.values.model(self.variance_mode)?;
            }
        }
        Ok(())
    }

    /// `k`, `d2` and `dD2` are all present.
    pub fn has_model_keys(&self) -> bool {
        [Key::K, Key::D2, Key::DD2].iter().all(|&k| self.values.get(k).is_some())
    }

    fn require_model_keys(values: &Values) -> Result<(), ConfigError> {
        for key in [Key::K, Key::D2, Key::DD2] {
            values.require(key)?;
        }
        if !values.has_speculator() {
            values.require(Key::MY)?;
            values.require(Key::SigmaY2)?;
        } else {
            values.speculator()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const REMARK: &str = "k=0.7\nd=2\nd_D=0.355\nm_Y=0.8\nsigma_Y2=0.1";

    #[test]
    fn remark_document() {
        let values = Values::parse(REMARK).unwrap();
        let params = values.model(VarianceMode::Exact).unwrap();
        assert_eq!(params, ModelParams::new(0.7, 4.0, 0.355 * 0.355, 0.8, 0.1).unwrap());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# remark\n\nk = 0.7   # seizure\n d2=4\ndD2 = 0.126025\nm_Y=0.8\nsigma_Y2=0.1\n";
        let params = Values::parse(text).unwrap().model(VarianceMode::Exact).unwrap();
        assert_eq!(params.d2, 4.0);
        assert_eq!(params.dd2, 0.126025);
    }

    #[test]
    fn out_of_range_names_key_and_line() {
        let err = Values::parse("m_Y=0.8\nk=1.5").unwrap_err();
        assert!(matches!(&err, ConfigError::Domain { key, at: Location::Line(2), .. } if key == "k"));
        assert!(err.to_string().contains("line 2"));
        assert!(err.to_string().contains("k = 1.5"));
    }

    #[test]
    fn redundant_risk_aversion_conflicts() {
        let err = Values::parse("d2=4\nd=2").unwrap_err();
        assert!(matches!(err, ConfigError::Conflict { .. }), "{err}");
        assert!(err.to_string().contains("d2"));
    }

    #[test]
    fn unknown_and_malformed() {
        assert!(matches!(Values::parse("kappa=1"), Err(ConfigError::UnknownKey { .. })));
        assert!(matches!(Values::parse("k=abc"), Err(ConfigError::Number { .. })));
        assert!(matches!(Values::parse("k 0.5"), Err(ConfigError::Syntax { .. })));
        assert!(matches!(Values::parse("k=nan"), Err(ConfigError::Domain { .. })));
    }

    #[test]
    fn missing_key_reported() {
        let err = Values::parse("k=0.7\nd=2\nd_D=0.3\nm_Y=0.8").unwrap().model(VarianceMode::Exact);
        assert_eq!(err, Err(ConfigError::Missing { key: "sigma_Y2" }));
    }

    #[test]
    fn overrides_replace_file_values() {
        let mut values = Values::parse(REMARK).unwrap();
        values.apply_overrides(&["d2=9", "k = 0.5"]).unwrap();
        let params = values.model(VarianceMode::Exact).unwrap();
        assert_eq!((params.k, params.d2), (0.5, 9.0));
        let err = values.apply_overrides(&["d=1", "d2=1"]).unwrap_err();
        assert!(err.to_string().contains("--set #2"), "{err}");
    }

    #[test]
    fn speculator_keys_derive_crypto_moments() {
        let text = "k=0.7\nd=2\nd_D=0.355\na1=1\na2=1\nq=0.1\nr1=0.1\nr2=0.5";
        let params = Values::parse(text).unwrap().model(VarianceMode::Exact).unwrap();
        assert!((params.m_y - 0.78).abs() < 1e-15);
        assert!((params.sig_y2 - 0.0081).abs() < 1e-15);
        let both = Values::parse(&format!("{text}\nm_Y=0.8")).unwrap().model(VarianceMode::Exact);
        assert!(matches!(both, Err(ConfigError::Conflict { .. })));
        let inverted = Values::parse("a1=1\na2=1\nq=0.1\nr1=0.5\nr2=0.1").unwrap().speculator();
        assert!(matches!(inverted, Err(ConfigError::Domain { .. })));
    }

    #[test]
    fn sweep_axis_parsing() {
        let axis = SweepAxis::parse("k:0.1:0.9:5").unwrap();
        assert_eq!(axis.target, SweepTarget::Param { key: Key::K, scale: Scale::AsIs });
        assert_eq!(axis.value(0), 0.1);
        assert_eq!(axis.value(4), 0.9);
        assert!((axis.value(2) - 0.5).abs() < 1e-15);
        assert_eq!(SweepAxis::parse("p:0:1:2048").unwrap().target, SweepTarget::P);
        assert!(SweepAxis::parse("k:0:1:1").is_err());
        assert!(SweepAxis::parse("k:0:1").is_err());
        assert!(SweepAxis::parse("zeta:0:1:3").is_err());
        assert!(SweepAxis::parse("p:0:2:3").is_err());
    }
}
