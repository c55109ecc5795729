//! Simultaneous-move equilibria.
//!
//! An interior Nash equilibrium is a crossing of the government curve `x1`
//! and the wealthy curve `x2` inside the unit square. Crossings are isolated
//! by scanning `g(p) = x1(p) - x2(p)` on a uniform grid, bracketing each sign
//! change and bisecting it.

use alloc::vec::Vec;

use crate::best_response::{
    condpos_holds, monotone_condition_holds, require_government, require_wealthy, x1_at, x2_at,
};
use crate::error::{check_unit, Error, Result};
use crate::model::{ModelParams, StrategyPoint};
use crate::search::{bisect, grid_point};

/// Tuning knobs for [`find_nash`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolverOptions {
    /// Number of scan intervals on `[0, 1]`.
    pub scan_intervals: usize,
    /// Bisection stops once the bracket is this narrow.
    pub bisect_tol: f64,
    /// `|g|` below this without a sign change is reported as a possible tangency.
    pub tangency_tol: f64,
    /// Roots closer than this in `p` are merged.
    pub merge_tol: f64,
    /// Crossings with `x` outside `[0, 1]` by more than this are discarded.
    pub boundary_tol: f64,
    /// Number of deviation grid points used to verify each equilibrium.
    pub verify_grid: usize,
    /// Largest unilateral gain tolerated by the verification.
    pub verify_eps: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            scan_intervals: 2048,
            bisect_tol: 1e-12,
            tangency_tol: 1e-6,
            merge_tol: 1e-8,
            boundary_tol: 1e-12,
            verify_grid: 10_001,
            verify_eps: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum EquilibriumKind {
    Nash,
    LeaderFollower,
}

/// An equilibrium together with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EquilibriumResult {
    pub point: StrategyPoint,
    pub kind: EquilibriumKind,
    /// `|x1(p) - x2(p)|` for Nash points; final bracket width in `p` for the
    /// leader-follower solution.
    pub residual: f64,
    /// Largest unilateral gain found on the verification grid.
    pub verified_eps: f64,
    /// Both players' second-order conditions hold strictly.
    pub second_order_ok: bool,
}

/// Every equilibrium found by [`find_nash`], sorted by `p`, plus the grid
/// points where the curves touch without crossing.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NashOutcome {
    pub equilibria: Vec<EquilibriumResult>,
    pub suspected_tangencies: Vec<f64>,
}

/// Which existence test applies, by the position of `pc = k / (2 dD2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ExistenceCase {
    /// `pc < 1`: `x1` reaches zero inside the square.
    #[cfg_attr(feature = "serde", serde(rename = "A"))]
    PcBelowOne,
    /// `pc >= 1`: `x1` stays positive on `[0, 1]`.
    #[cfg_attr(feature = "serde", serde(rename = "B"))]
    PcAtLeastOne,
}

/// The sufficient existence and uniqueness conditions evaluated at a
/// parameter vector.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConditionsReport {
    pub pc: f64,
    /// `(1 + 2 d2)(1 - mY) <= k`.
    pub condpos_holds: bool,
    /// `A <= k`, which keeps `x2` nondecreasing on `[0, 1]`.
    pub monotone_condition_holds: bool,
    pub case: ExistenceCase,
    pub existence_condition_holds: bool,
    pub existence_guaranteed: bool,
    pub uniqueness_guaranteed: bool,
}

/// Evaluates the existence and uniqueness tests.
///
/// Uniqueness is only guaranteed by `A <= k`; the printed `condpos` test is
/// reported alongside but does not by itself keep `x2` monotone.
pub fn conditions_report(params: &ModelParams) -> Result<ConditionsReport> {
    require_nash_params(params)?;
    let ModelParams {
        k,
        d2,
        dd2,
        m_y,
        sig_y2,
        ..
    } = *params;
    let pc = k / (2.0 * dd2);
    let (case, existence_condition_holds) = if pc < 1.0 {
        let lhs = k * k * pc * (1.0 - pc) + (m_y - 1.0 + pc * k) / (2.0 * d2);
        (ExistenceCase::PcBelowOne, lhs > 0.0)
    } else {
        let lhs = (m_y - 1.0 + k) / (2.0 * d2) / sig_y2 + 2.0 * dd2 / k;
        (ExistenceCase::PcAtLeastOne, lhs >= 1.0)
    };
    let monotone = monotone_condition_holds(params);
    Ok(ConditionsReport {
        pc,
        condpos_holds: condpos_holds(params),
        monotone_condition_holds: monotone,
        case,
        existence_condition_holds,
        existence_guaranteed: existence_condition_holds,
        uniqueness_guaranteed: monotone,
    })
}

fn require_nash_params(params: &ModelParams) -> Result<()> {
    require_government(params)?;
    require_wealthy(params)?;
    if !(params.dd2 > 0.0) {
        return Err(Error::RiskNeutralGovernment);
    }
    Ok(())
}

/// Finds every interior Nash equilibrium.
pub fn find_nash(params: &ModelParams, opts: &SolverOptions) -> Result<NashOutcome> {
    require_nash_params(params)?;
    if opts.scan_intervals < 1 {
        return Err(Error::Domain {
            name: "scan_intervals",
            value: opts.scan_intervals as f64,
            expected: ">= 1",
        });
    }
    let g = |p: f64| x1_at(params, p) - x2_at(params, p);
    let n = opts.scan_intervals + 1;
    let grid: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let p = grid_point(0.0, 1.0, i, n);
            (p, g(p))
        })
        .collect();

    let mut roots = Vec::new();
    for (i, &(p, gp)) in grid.iter().enumerate() {
        if gp == 0.0 {
            roots.push(p);
            continue;
        }
        if let Some(&(q, gq)) = grid.get(i + 1) {
            if gq != 0.0 && (gp < 0.0) != (gq < 0.0) {
                roots.push(bisect(g, p, q, gp, opts.bisect_tol));
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| *b - *a < opts.merge_tol);

    let mut suspected_tangencies = Vec::new();
    for w in grid.windows(3) {
        let [(_, ga), (p, gb), (_, gc)] = [w[0], w[1], w[2]];
        let same_sign = (ga < 0.0) == (gb < 0.0) && (gb < 0.0) == (gc < 0.0);
        if gb != 0.0
            && ga != 0.0
            && gc != 0.0
            && same_sign
            && gb.abs() < opts.tangency_tol
            && gb.abs() <= ga.abs()
            && gb.abs() <= gc.abs()
        {
            suspected_tangencies.push(p);
        }
    }

    let mut equilibria = Vec::with_capacity(roots.len());
    for p in roots {
        let x = x1_at(params, p);
        if x < -opts.boundary_tol || x > 1.0 + opts.boundary_tol {
            continue;
        }
        let x = x.clamp(0.0, 1.0);
        let residual = (x1_at(params, p) - x2_at(params, p)).abs();
        let check = deviation_gains(params, p, x, opts.verify_grid.max(2));
        equilibria.push(EquilibriumResult {
            point: params.point_at(p, x),
            kind: EquilibriumKind::Nash,
            residual,
            verified_eps: check.max_gain(),
            second_order_ok: params.wealthy_curvature(p) < 0.0 && params.government_curvature() < 0.0,
        });
    }
    Ok(NashOutcome {
        equilibria,
        suspected_tangencies,
    })
}

/// Largest gains available to each player by unilateral grid deviations.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DeviationCheck {
    /// Best gain for the wealthy moving `x` with `p` held fixed.
    pub wealthy_gain: f64,
    /// Best gain for the government moving `p` with `x` held fixed.
    pub government_gain: f64,
    pub eps: f64,
}

impl DeviationCheck {
    pub fn max_gain(&self) -> f64 {
        self.wealthy_gain.max(self.government_gain)
    }

    pub fn is_nash(&self) -> bool {
        self.max_gain() <= self.eps
    }
}

/// Scans `grid_n` uniform deviations along each player's own axis and
/// reports the largest utility gains (risk-averse government utility).
pub fn verify_nash(params: &ModelParams, point: &StrategyPoint, grid_n: usize, eps: f64) -> Result<DeviationCheck> {
    params.validate()?;
    check_unit("p", point.p)?;
    check_unit("x", point.x)?;
    if grid_n < 2 {
        return Err(Error::Domain {
            name: "grid_n",
            value: grid_n as f64,
            expected: ">= 2",
        });
    }
    Ok(DeviationCheck {
        eps,
        ..deviation_gains(params, point.p, point.x, grid_n)
    })
}

fn deviation_gains(params: &ModelParams, p: f64, x: f64, grid_n: usize) -> DeviationCheck {
    let u_w = params.utility_w_at(p, x);
    let u_d = params.utility_d_risk_averse_at(p, x);
    let mut wealthy_gain: f64 = 0.0;
    let mut government_gain: f64 = 0.0;
    for i in 0..grid_n {
        let t = grid_point(0.0, 1.0, i, grid_n);
        wealthy_gain = wealthy_gain.max(params.utility_w_at(p, t) - u_w);
        government_gain = government_gain.max(params.utility_d_risk_averse_at(t, x) - u_d);
    }
    DeviationCheck {
        wealthy_gain,
        government_gain,
        eps: 0.0,
    }
}
