//! Equilibria of the two-player cryptocurrency allocation game.
//!
//! A wealthy group splits its assets between a home currency, which a
//! government may partially seize with probability `p`, and a volatile
//! cryptocurrency. The wealthy pick the crypto fraction `x`, the government
//! picks `p`. This crate evaluates both mean-variance utilities and solves for
//!
//! * simultaneous (Nash) equilibria, as intersections of the two
//!   stationarity curves, with the sufficient existence/uniqueness tests;
//! * the leader-follower equilibrium where the government commits to `p`
//!   first and the wealthy best-respond;
//! * the speculators' volatility choice and the crypto return statistics it
//!   induces;
//! * demand-based pricing.
//!
//! The [`oracle`] module holds brute-force grid counterparts of every solver.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]
// `!(v > 0.0)` rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod best_response;
pub mod error;
pub mod model;
pub mod nash;
pub mod oracle;
pub mod pricing;
pub mod speculator;
pub mod stackelberg;

mod search;

pub use error::{Error, Result};
pub use model::{HomeStats, ModelParams, StrategyPoint};
pub use nash::{
    conditions_report, find_nash, verify_nash, ConditionsReport, DeviationCheck, EquilibriumKind,
    EquilibriumResult, ExistenceCase, NashOutcome, SolverOptions,
};
pub use stackelberg::{
    closed_form_pstar, leader_objective, solve_stackelberg, ClosedForm, Regime,
    StackelbergOptions, StackelbergSolution,
};
