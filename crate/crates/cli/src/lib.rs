//! Command-line front end for the cryptocurrency allocation game.
//!
//! Parameters come from a `key = value` file plus `--set` overrides; each
//! subcommand prints one report to standard output.

// `!(v > 0.0)` rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod config;
pub mod report;
pub mod run;

pub use args::{Cli, Subcommand};
pub use config::{ConfigError, RunConfig};
pub use run::{run, RunError};

/// Parses, runs and returns `(exit_code, stdout, stderr)`.
pub fn execute(cli: &Cli) -> (i32, String, String) {
    match cli.to_config().map_err(RunError::from).and_then(|config| run(&config)) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
