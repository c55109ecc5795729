//! Dispatch from a validated [`RunConfig`] to the solvers.

use cryptoeq_core::best_response::{x1, x2_derivative_numerator, x2_raw, xhat};
use cryptoeq_core::oracle::{grid_nash, grid_stackelberg};
use cryptoeq_core::pricing::{aggregate_demand, equilibrium_price};
use cryptoeq_core::speculator::{derive_crypto_stats, optimal_volatility};
use cryptoeq_core::stackelberg::leader_objective;
use cryptoeq_core::{
    conditions_report, find_nash, solve_stackelberg, ConditionsReport, EquilibriumResult, ExistenceCase, ModelParams,
    Regime, StackelbergSolution,
};

use crate::config::{Command, ConfigError, Location, OutputFormat, RunConfig, Scale, SweepAxis, SweepTarget};
use crate::report::{
    to_json, Cell, ClusterSummary, ConditionsOutput, NashReport, OracleNash, OracleStackelberg, PriceReport,
    PricedPoint, SpeculatorReport, StackelbergReport, Table,
};

/// Most crossings the curves can have: `x1 - x2 = 0` clears to a cubic.
pub const SWEEP_EQUILIBRIUM_SLOTS: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("solver precondition failed: {0}")]
    Solver(#[from] cryptoeq_core::Error),
    #[error("output error: {0}")]
    Output(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Solver(_) | RunError::Output(_) => 1,
        }
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::Output(e.to_string())
    }
}

impl From<csv::Error> for RunError {
    fn from(e: csv::Error) -> Self {
        RunError::Output(e.to_string())
    }
}

/// Runs the command and returns the report text.
pub fn run(config: &RunConfig) -> Result<String, RunError> {
    config.validate()?;
    match config.command {
        Command::Nash => nash(config),
        Command::Stackelberg => stackelberg(config),
        Command::Conditions => conditions(config),
        Command::Price => price(config),
        Command::Speculator => speculator(config),
        Command::Sweep => sweep(config),
    }
}

fn model(config: &RunConfig) -> Result<ModelParams, RunError> {
    Ok(config.values.model(config.variance_mode)?)
}

fn emit(config: &RunConfig, json: impl FnOnce() -> Result<String, RunError>, table: impl FnOnce() -> Table) -> Result<String, RunError> {
    match config.format {
        OutputFormat::Json => json(),
        OutputFormat::Csv => Ok(table().to_csv()?),
    }
}

pub fn nash_report(config: &RunConfig, params: &ModelParams) -> Result<NashReport, RunError> {
    let outcome = find_nash(params, &config.solver)?;
    let conditions = conditions_report(params)?;
    let oracle = match config.oracle {
        Some(grid) => Some(OracleNash {
            grid,
            clusters: grid_nash(params, &grid)?
                .into_iter()
                .map(|c| ClusterSummary {
                    size: c.members.len(),
                    min_gain: c.members.iter().map(|m| m.gain).fold(f64::INFINITY, f64::min),
                    centroid: c.centroid,
                    cores: c.cores,
                })
                .collect(),
        }),
        None => None,
    };
    Ok(NashReport {
        params: *params,
        options: config.solver,
        conditions,
        equilibria: outcome.equilibria,
        suspected_tangencies: outcome.suspected_tangencies,
        oracle,
    })
}

fn nash(config: &RunConfig) -> Result<String, RunError> {
    let params = model(config)?;
    let report = nash_report(config, &params)?;
    emit(
        config,
        || Ok(to_json(&report)?),
        || {
            let mut table = Table::new(["p", "x", "uW", "uD", "residual", "verified_eps", "second_order_ok"]);
            for eq in &report.equilibria {
                table.push(vec![
                    eq.point.p.into(),
                    eq.point.x.into(),
                    eq.point.u_w.into(),
                    eq.point.u_d.into(),
                    eq.residual.into(),
                    eq.verified_eps.into(),
                    eq.second_order_ok.into(),
                ]);
            }
            table
        },
    )
}

fn stackelberg(config: &RunConfig) -> Result<String, RunError> {
    let params = model(config)?;
    let solution = solve_stackelberg(&params, &config.stackelberg)?;
    let oracle = match config.oracle {
        Some(grid) => Some(OracleStackelberg {
            grid,
            point: grid_stackelberg(&params, &grid)?,
        }),
        None => None,
    };
    let report = StackelbergReport {
        params,
        options: config.stackelberg,
        attractiveness: params.attractiveness(),
        solution,
        oracle,
    };
    emit(
        config,
        || Ok(to_json(&report)?),
        || {
            let s = &report.solution;
            let mut table = Table::new([
                "pstar",
                "xstar",
                "uD",
                "uW",
                "A",
                "regime",
                "closed_form_pstar",
                "closed_form_used",
                "closed_form_numeric_gap",
            ]);
            table.push(vec![
                s.pstar.into(),
                s.xstar.into(),
                s.u_d.into(),
                s.u_w.into(),
                report.attractiveness.into(),
                regime_name(s.regime).into(),
                s.closed_form_pstar.into(),
                s.closed_form_used.into(),
                s.closed_form_numeric_gap.into(),
            ]);
            table
        },
    )
}

fn conditions_columns() -> [&'static str; 7] {
    [
        "pc",
        "condpos",
        "monotone",
        "case",
        "existence_condition",
        "existence_guaranteed",
        "uniqueness_guaranteed",
    ]
}

fn conditions_cells(c: &ConditionsReport) -> Vec<Cell> {
    vec![
        c.pc.into(),
        c.condpos_holds.into(),
        c.monotone_condition_holds.into(),
        case_name(c.case).into(),
        c.existence_condition_holds.into(),
        c.existence_guaranteed.into(),
        c.uniqueness_guaranteed.into(),
    ]
}

fn conditions(config: &RunConfig) -> Result<String, RunError> {
    let params = model(config)?;
    let report = ConditionsOutput {
        params,
        attractiveness: params.attractiveness(),
        conditions: conditions_report(&params)?,
    };
    emit(
        config,
        || Ok(to_json(&report)?),
        || {
            let mut table = Table::new(conditions_columns());
            table.push(conditions_cells(&report.conditions));
            table
        },
    )
}

fn priced(wealth_total: f64, units: f64, p: f64, x: f64) -> Result<PricedPoint, RunError> {
    let demand = aggregate_demand(wealth_total, x)?;
    Ok(PricedPoint {
        p,
        x,
        demand,
        price: equilibrium_price(demand, units)?,
    })
}

fn price(config: &RunConfig) -> Result<String, RunError> {
    let params = model(config)?;
    let (wealth_total, units) = config.values.market()?;
    let outcome = find_nash(&params, &config.solver)?;
    let leader = solve_stackelberg(&params, &config.stackelberg)?;
    let report = PriceReport {
        params,
        wealth_total,
        units,
        nash: outcome
            .equilibria
            .iter()
            .map(|eq| priced(wealth_total, units, eq.point.p, eq.point.x))
            .collect::<Result<_, _>>()?,
        stackelberg: priced(wealth_total, units, leader.pstar, leader.xstar)?,
    };
    emit(
        config,
        || Ok(to_json(&report)?),
        || {
            let mut table = Table::new(["kind", "p", "x", "demand", "price"]);
            let rows = report.nash.iter().map(|r| ("nash", r)).chain([("stackelberg", &report.stackelberg)]);
            for (kind, r) in rows {
                table.push(vec![kind.into(), r.p.into(), r.x.into(), r.demand.into(), r.price.into()]);
            }
            table
        },
    )
}

fn speculator(config: &RunConfig) -> Result<String, RunError> {
    let sp = config.values.speculator()?.expect("validated");
    let stats = derive_crypto_stats(&sp, config.variance_mode)?;
    let mut warnings = Vec::new();
    if stats.mean_exceeds_one {
        warnings.push(format!("m_Y = {} exceeds 1; the equilibrium solvers require m_Y <= 1", stats.m_y));
    }
    let (params, equilibria, leader) = if config.has_model_keys() && !stats.mean_exceeds_one {
        let params = model(config)?;
        let equilibria = find_nash(&params, &config.solver)?.equilibria;
        let leader = solve_stackelberg(&params, &config.stackelberg)?;
        (Some(params), Some(equilibria), Some(leader))
    } else {
        (None, None, None)
    };
    let report = SpeculatorReport {
        speculator: sp,
        variance_mode: config.variance_mode,
        optimal_volatility: optimal_volatility(&sp),
        stats,
        warnings,
        params,
        equilibria,
        stackelberg: leader,
    };
    emit(
        config,
        || Ok(to_json(&report)?),
        || {
            let mut table = Table::new(["a1", "a2", "q", "r1", "r2", "variance_mode", "Vm", "mY", "sigY2", "mean_exceeds_one"]);
            table.push(vec![
                sp.a1.into(),
                sp.a2.into(),
                sp.q.into(),
                sp.r1.into(),
                sp.r2.into(),
                format!("{:?}", report.variance_mode).into(),
                report.optimal_volatility.into(),
                stats.m_y.into(),
                stats.sig_y2.into(),
                stats.mean_exceeds_one.into(),
            ]);
            table
        },
    )
}

fn regime_name(regime: Regime) -> &'static str {
    match regime {
        Regime::AZero => "A=0",
        Regime::ABelowK => "0<A<k",
        Regime::AEqualsK => "A=k",
        Regime::ABetweenK2K => "k<A<2k",
        Regime::AAbove2K => "A>=2k",
    }
}

fn case_name(case: ExistenceCase) -> &'static str {
    match case {
        ExistenceCase::PcBelowOne => "A",
        ExistenceCase::PcAtLeastOne => "B",
    }
}

fn sweep(config: &RunConfig) -> Result<String, RunError> {
    let axis = config.sweep.expect("validated");
    let table = match axis.target {
        SweepTarget::P => curve_table(config, &axis)?,
        SweepTarget::Param { .. } => param_table(config, &axis),
    };
    match config.format {
        OutputFormat::Csv => Ok(table.to_csv()?),
        OutputFormat::Json => Ok(to_json(&table)?),
    }
}

/// Columns of a sweep over `p`: both stationarity curves, the clamped best
/// response, the slope numerator of `x2` and the leader's objective.
pub const CURVE_COLUMNS: [&str; 6] = ["p", "x1", "x2", "xhat", "x2_numerator", "leader_objective"];

fn curve_table(config: &RunConfig, axis: &SweepAxis) -> Result<Table, RunError> {
    let params = model(config)?;
    let mut table = Table::new(CURVE_COLUMNS);
    for i in 0..axis.steps {
        let p = axis.value(i);
        table.push(vec![
            p.into(),
            x1(&params, p)?.into(),
            x2_raw(&params, p)?.into(),
            xhat(&params, p)?.into(),
            x2_derivative_numerator(&params, p)?.into(),
            leader_objective(&params, p)?.into(),
        ]);
    }
    Ok(table)
}

/// Columns of a sweep over a parameter.
pub fn param_columns(axis_name: &str) -> Vec<String> {
    let mut cols = vec![axis_name.to_string(), "status".into(), "n_equilibria".into()];
    for slot in 1..=SWEEP_EQUILIBRIUM_SLOTS {
        for field in ["p", "x", "uW", "uD"] {
            cols.push(format!("eq{slot}_{field}"));
        }
    }
    cols.extend(conditions_columns().iter().map(|s| s.to_string()));
    cols.extend(["stackelberg_p", "stackelberg_x", "stackelberg_uD", "regime"].map(String::from));
    cols
}

fn param_table(config: &RunConfig, axis: &SweepAxis) -> Table {
    let SweepTarget::Param { key, scale } = axis.target else {
        unreachable!("parameter sweep");
    };
    let mut table = Table::new(param_columns(axis.name));
    for i in 0..axis.steps {
        let value = axis.value(i);
        let mut values = config.values.clone();
        let stored = match scale {
            Scale::AsIs => value,
            Scale::Squared => value * value,
        };
        values.set(key, stored, Location::Flag(0));
        let row = match values.model(config.variance_mode) {
            Ok(params) => sweep_row(config, &params),
            Err(e) => Err(RunError::Config(e)),
        };
        table.push(match row {
            Ok(mut cells) => {
                cells.insert(0, value.into());
                cells
            }
            Err(e) => failed_row(value, &e, table.columns.len()),
        });
    }
    table
}

fn failed_row(value: f64, err: &RunError, width: usize) -> Vec<Cell> {
    let mut cells = vec![value.into(), err.to_string().into()];
    cells.resize(width, Cell::empty());
    cells
}

fn equilibrium_cells(eqs: &[EquilibriumResult]) -> Vec<Cell> {
    let mut cells = Vec::with_capacity(4 * SWEEP_EQUILIBRIUM_SLOTS);
    for slot in 0..SWEEP_EQUILIBRIUM_SLOTS {
        match eqs.get(slot) {
            Some(eq) => cells.extend([eq.point.p, eq.point.x, eq.point.u_w, eq.point.u_d].map(Cell::from)),
            None => cells.extend((0..4).map(|_| Cell::empty())),
        }
    }
    cells
}

fn leader_cells(solution: &StackelbergSolution) -> Vec<Cell> {
    vec![
        solution.pstar.into(),
        solution.xstar.into(),
        solution.u_d.into(),
        regime_name(solution.regime).into(),
    ]
}

/// All cells after the swept value.
fn sweep_row(config: &RunConfig, params: &ModelParams) -> Result<Vec<Cell>, RunError> {
    let outcome = find_nash(params, &config.solver)?;
    let conditions = conditions_report(params)?;
    let leader = solve_stackelberg(params, &config.stackelberg)?;
    let status = if outcome.equilibria.len() > SWEEP_EQUILIBRIUM_SLOTS {
        "truncated"
    } else {
        "ok"
    };
    let mut cells = vec![status.into(), outcome.equilibria.len().into()];
    cells.extend(equilibrium_cells(&outcome.equilibria));
    cells.extend(conditions_cells(&conditions));
    cells.extend(leader_cells(&leader));
    Ok(cells)
}
