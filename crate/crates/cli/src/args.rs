//! Flag definitions and their translation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use cryptoeq_core::oracle::GridSpec;
use cryptoeq_core::speculator::VarianceMode;
use cryptoeq_core::{SolverOptions, StackelbergOptions};

use crate::config::{Command, ConfigError, OutputFormat, RunConfig, SweepAxis, Values};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    /// Simultaneous-move equilibria
    Nash,
    /// Leader-follower equilibrium with the government leading
    Stackelberg,
    /// Existence and uniqueness conditions
    Conditions,
    /// Re-solve along a parameter axis (or sample the curves over p)
    Sweep,
    /// Equilibrium trading price of each equilibrium allocation
    Price,
    /// Crypto moments induced by the speculators' volatility choice
    Speculator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "cryptoeq", version, about = "Equilibria of the cryptocurrency allocation game")]
pub struct Cli {
    pub command: Subcommand,
    /// Parameter file with one `key = value` per line
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override one parameter (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub sets: Vec<String>,
    /// Output format; JSON for single solves and CSV for sweeps by default
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Cross-check the solve against the brute-force grid oracle
    #[arg(long)]
    pub oracle: bool,
    /// Oracle grid points per axis
    #[arg(long, default_value_t = GridSpec::default().n_p)]
    pub oracle_grid: usize,
    /// Oracle acceptance tolerance for epsilon-equilibria
    #[arg(long, default_value_t = GridSpec::default().eps)]
    pub oracle_eps: f64,
    /// Scan intervals of the equilibrium and leader-objective searches
    #[arg(long)]
    pub grid: Option<usize>,
    /// Root and refinement tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Sweep axis as param:start:stop:steps (param `p` samples the curves)
    #[arg(long, value_name = "PARAM:START:STOP:STEPS")]
    pub sweep: Option<String>,
    /// Use the linear-in-volatility crypto variance instead of the exact one
    #[arg(long)]
    pub printed_variance: bool,
}

impl Cli {
    pub fn to_config(&self) -> Result<RunConfig, ConfigError> {
        let mut values = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                Values::parse(&text)?
            }
            None => Values::default(),
        };
        values.apply_overrides(&self.sets)?;

        let command = match self.command {
            Subcommand::Nash => Command::Nash,
            Subcommand::Stackelberg => Command::Stackelberg,
            Subcommand::Conditions => Command::Conditions,
            Subcommand::Sweep => Command::Sweep,
            Subcommand::Price => Command::Price,
            Subcommand::Speculator => Command::Speculator,
        };
        let format = match (self.format, command) {
            (Some(Format::Json), _) => OutputFormat::Json,
            (Some(Format::Csv), _) | (None, Command::Sweep) => OutputFormat::Csv,
            (None, _) => OutputFormat::Json,
        };

        let mut solver = SolverOptions::default();
        let mut stackelberg = StackelbergOptions::default();
        if let Some(n) = self.grid {
            if n < 2 {
                return Err(ConfigError::Invalid(format!("--grid {n}: must be >= 2")));
            }
            solver.scan_intervals = n;
            stackelberg.coarse_intervals = n;
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(ConfigError::Invalid(format!("--tol {tol}: must be > 0")));
            }
            solver.bisect_tol = tol;
            stackelberg.refine_tol = tol;
        }
        let oracle = if self.oracle {
            let grid = GridSpec::new(self.oracle_grid, self.oracle_grid, self.oracle_eps)
                .map_err(|e| ConfigError::Invalid(format!("oracle grid: {e}")))?;
            Some(grid)
        } else {
            None
        };

        let config = RunConfig {
            command,
            values,
            variance_mode: if self.printed_variance {
                VarianceMode::AsPrinted
            } else {
                VarianceMode::Exact
            },
            sweep: self.sweep.as_deref().map(SweepAxis::parse).transpose()?,
            format,
            solver,
            stackelberg,
            oracle,
        };
        config.validate()?;
        Ok(config)
    }
}
