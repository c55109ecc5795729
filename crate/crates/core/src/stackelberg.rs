//! Leader-follower equilibrium on disparate time scales.
//!
//! The government commits to `p` once, with the linear utility `(1 - x) k p`;
//! the wealthy then play their best response `xhat(p)`. The leader therefore
//! maximises `U_D(p, xhat(p))` over `[0, 1]`.
//!
//! While `xhat` is interior the objective is
//! `(k / 2 d2) (A p - k p^2) / (B + k^2 p (1 - p))` with `B = sigY2`, whose
//! derivative has the sign of `Q(p) = A B - 2 B k p + k^2 (A - k) p^2`. The
//! closed form picks the relevant root of `Q` by regime of `A` against `k`.
//! Clipping of `xhat` changes the objective piecewise, so the numeric
//! maximiser is the reported answer and the closed form is a cross-check.

use alloc::vec::Vec;

use crate::best_response::{require_government, require_wealthy, x2_at, xhat_at};
use crate::error::{check_unit, Error, Result};
use crate::model::{ModelParams, StrategyPoint};
use crate::nash::{EquilibriumKind, EquilibriumResult};
use crate::search::{golden_max, grid_point};

/// Position of the attractiveness `A` relative to the seizure fraction `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Regime {
    AZero,
    ABelowK,
    AEqualsK,
    /// `k < A < 2k`.
    ABetweenK2K,
    /// `A >= 2k`.
    AAbove2K,
}

impl Regime {
    pub fn classify(a: f64, k: f64) -> Regime {
        if a == 0.0 {
            Regime::AZero
        } else if a < k {
            Regime::ABelowK
        } else if a == k {
            Regime::AEqualsK
        } else if a < 2.0 * k {
            Regime::ABetweenK2K
        } else {
            Regime::AAbove2K
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClosedForm {
    pub pstar: f64,
    pub regime: Regime,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StackelbergOptions {
    /// Coarse grid intervals on `[0, 1]` before refinement.
    pub coarse_intervals: usize,
    /// Golden-section refinement stops at this bracket width.
    pub refine_tol: f64,
}

impl Default for StackelbergOptions {
    fn default() -> Self {
        StackelbergOptions {
            coarse_intervals: 4096,
            refine_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StackelbergSolution {
    pub pstar: f64,
    pub xstar: f64,
    /// Linear government utility at the solution.
    #[cfg_attr(feature = "serde", serde(rename = "uD"))]
    pub u_d: f64,
    #[cfg_attr(feature = "serde", serde(rename = "uW"))]
    pub u_w: f64,
    pub regime: Regime,
    /// Closed-form value of `p*` for this regime.
    pub closed_form_pstar: f64,
    /// The closed form is valid here: `0 <= A < k` and `x2` lies in `[0, 1]`
    /// at the closed-form point.
    pub closed_form_used: bool,
    pub closed_form_numeric_gap: f64,
    /// Width of the final refinement bracket.
    pub bracket_width: f64,
}

impl StackelbergSolution {
    pub fn point(&self) -> StrategyPoint {
        StrategyPoint {
            p: self.pstar,
            x: self.xstar,
            u_w: self.u_w,
            u_d: self.u_d,
        }
    }

    pub fn to_equilibrium(&self) -> EquilibriumResult {
        EquilibriumResult {
            point: self.point(),
            kind: EquilibriumKind::LeaderFollower,
            residual: self.bracket_width,
            verified_eps: 0.0,
            second_order_ok: true,
        }
    }
}

fn require_leader_follower(params: &ModelParams) -> Result<()> {
    require_government(params)?;
    require_wealthy(params)
}

/// Government payoff when the wealthy best-respond to `p`.
pub fn leader_objective(params: &ModelParams, p: f64) -> Result<f64> {
    require_leader_follower(params)?;
    check_unit("p", p)?;
    Ok(objective_at(params, p))
}

/// The same payoff written as a rational function, valid wherever `xhat` is
/// interior.
pub fn leader_objective_interior(params: &ModelParams, p: f64) -> Result<f64> {
    require_leader_follower(params)?;
    check_unit("p", p)?;
    Ok(interior_objective_at(params, p))
}

fn objective_at(params: &ModelParams, p: f64) -> f64 {
    params.utility_d_linear_at(p, xhat_at(params, p))
}

fn interior_objective_at(params: &ModelParams, p: f64) -> f64 {
    let ModelParams { k, d2, sig_y2, .. } = *params;
    let a = params.attractiveness();
    k / (2.0 * d2) * (a * p - k * p * p) / (sig_y2 + k * k * p * (1.0 - p))
}

/// The leader's optimal `p` assuming `xhat` stays interior.
///
/// Regimes `AZero`, `ABelowK` and `AEqualsK` take the single positive root of
/// `Q`; the unified expression `A B / (k (B + sqrt(B^2 + A B (k - A))))` used
/// for all three equals the textbook form
/// `B / (k (k - A)) (sqrt(1 + A (k - A) / B) - 1)` without its cancellation
/// near `A = k`. For `k < A < 2k`, `Q` has positive leading coefficient and
/// `Q(0) > 0`: the smaller root is a local maximum if it lies in `[0, 1]`,
/// and is compared against the endpoint `p = 1`. For `A >= 2k`, `Q > 0` and
/// the maximum sits at `p = 1`.
pub fn closed_form_pstar(params: &ModelParams) -> Result<ClosedForm> {
    params.validate()?;
    if !(params.k > 0.0) {
        return Err(Error::DegenerateGame);
    }
    if params.cov_yf != 0.0 {
        return Err(Error::CorrelatedAssets {
            cov_yf: params.cov_yf,
        });
    }
    let k = params.k;
    let b = params.sig_y2;
    let a = params.attractiveness();
    let regime = Regime::classify(a, k);
    let pstar = match regime {
        Regime::AZero => 0.0,
        Regime::ABelowK => smaller_root(a, b, k).unwrap_or(0.0).clamp(0.0, 1.0),
        // Q(p) = A B - 2 B k p vanishes at exactly one half.
        Regime::AEqualsK => 0.5,
        Regime::ABetweenK2K => match smaller_root(a, b, k) {
            Some(root) if root <= 1.0 => {
                // d2 cancels from the comparison, so use the bare ratio.
                let value = |p: f64| (a * p - k * p * p) / (b + k * k * p * (1.0 - p));
                if value(1.0) > value(root) {
                    1.0
                } else {
                    root
                }
            }
            _ => 1.0,
        },
        Regime::AAbove2K => 1.0,
    };
    Ok(ClosedForm { pstar, regime })
}

/// Smaller positive root of `Q`, `A B / (k (B + sqrt(B^2 - A B (A - k))))`,
/// or `None` when `Q` has no real root.
fn smaller_root(a: f64, b: f64, k: f64) -> Option<f64> {
    let disc = b * b - a * b * (a - k);
    if disc < 0.0 {
        return None;
    }
    Some(a * b / (k * (b + libm::sqrt(disc))))
}

/// Solves the leader-follower game numerically and cross-checks it against
/// [`closed_form_pstar`].
///
/// The objective is sampled on a coarse grid; each grid local maximum is
/// refined by golden-section search on its two neighbouring cells. Ties go
/// to the smaller `p`.
pub fn solve_stackelberg(params: &ModelParams, opts: &StackelbergOptions) -> Result<StackelbergSolution> {
    require_leader_follower(params)?;
    if opts.coarse_intervals < 2 {
        return Err(Error::Domain {
            name: "coarse_intervals",
            value: opts.coarse_intervals as f64,
            expected: ">= 2",
        });
    }
    let n = opts.coarse_intervals + 1;
    let values: Vec<f64> = (0..n)
        .map(|i| objective_at(params, grid_point(0.0, 1.0, i, n)))
        .collect();

    let mut best_idx = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best_idx] {
            best_idx = i;
        }
    }
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = i == 0 || values[i] >= values[i - 1];
            let right = i + 1 == n || values[i] > values[i + 1];
            left && right
        })
        .collect();
    candidates.push(best_idx);

    let mut best = (grid_point(0.0, 1.0, best_idx, n), values[best_idx]);
    let mut bracket_width = 1.0 / opts.coarse_intervals as f64;
    for i in candidates {
        let lo = grid_point(0.0, 1.0, i.saturating_sub(1), n);
        let hi = grid_point(0.0, 1.0, (i + 1).min(n - 1), n);
        let (p, v, width) = golden_max(|p| objective_at(params, p), lo, hi, opts.refine_tol);
        if v > best.1 || (v == best.1 && p < best.0) {
            best = (p, v);
            bracket_width = width;
        } else if p == best.0 {
            bracket_width = bracket_width.min(width);
        }
    }

    let (pstar, u_d) = best;
    let xstar = xhat_at(params, pstar);
    let closed = closed_form_pstar(params)?;
    let x_closed = x2_at(params, closed.pstar);
    let closed_form_used =
        matches!(closed.regime, Regime::AZero | Regime::ABelowK) && (0.0..=1.0).contains(&x_closed);
    Ok(StackelbergSolution {
        pstar,
        xstar,
        u_d,
        u_w: params.utility_w_at(pstar, xstar),
        regime: closed.regime,
        closed_form_pstar: closed.pstar,
        closed_form_used,
        closed_form_numeric_gap: (pstar - closed.pstar).abs(),
        bracket_width,
    })
}
