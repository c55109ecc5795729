//! Brute-force grid counterparts of the analytic solvers.
//!
//! Nothing here uses the closed-form curves: every answer comes from
//! evaluating the utilities on uniform grids and taking maxima, with ties
//! going to the smaller coordinate. Grid games accept correlated assets and
//! zero risk aversions since they only evaluate utilities.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_unit, Error, Result};
use crate::model::{ModelParams, StrategyPoint};
use crate::search::grid_point;

/// Resolution and tolerance of an oracle run.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSpec {
    pub n_p: usize,
    pub n_x: usize,
    /// Largest unilateral gain for which a grid point still counts as an
    /// equilibrium. It should scale with the grid spacing times the local
    /// utility gradient.
    pub eps: f64,
}

impl GridSpec {
    pub fn new(n_p: usize, n_x: usize, eps: f64) -> Result<Self> {
        let spec = GridSpec { n_p, n_x, eps };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, n) in [("n_p", self.n_p), ("n_x", self.n_x)] {
            if n < 2 {
                return Err(Error::Domain {
                    name,
                    value: n as f64,
                    expected: ">= 2",
                });
            }
        }
        if !(self.eps > 0.0) {
            return Err(Error::Domain {
                name: "eps",
                value: self.eps,
                expected: "> 0",
            });
        }
        Ok(())
    }

    pub fn p_spacing(&self) -> f64 {
        1.0 / (self.n_p - 1) as f64
    }

    pub fn x_spacing(&self) -> f64 {
        1.0 / (self.n_x - 1) as f64
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_p: 400,
            n_x: 400,
            eps: 2e-3,
        }
    }
}

/// Linking distance, in cells, between exact grid equilibria of one core.
///
/// Where the two grid best-response staircases cross a true equilibrium they
/// meet at isolated cells a few steps apart rather than in a connected run.
pub const CORE_LINK_CELLS: i64 = 4;

/// Which government utility the oracle maximises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GovernmentUtility {
    Linear,
    RiskAverse,
}

fn argmax<F: Fn(f64) -> f64>(n: usize, f: F) -> (f64, f64) {
    let mut best = (0.0, f(0.0));
    for i in 1..n {
        let t = grid_point(0.0, 1.0, i, n);
        let v = f(t);
        if v > best.1 {
            best = (t, v);
        }
    }
    best
}

fn check_n(name: &'static str, n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::Domain {
            name,
            value: n as f64,
            expected: ">= 2",
        })
    } else {
        Ok(())
    }
}

/// Grid maximiser of `U_W(p, .)`.
pub fn grid_best_x(params: &ModelParams, p: f64, n_x: usize) -> Result<f64> {
    params.validate()?;
    check_unit("p", p)?;
    check_n("n_x", n_x)?;
    Ok(argmax(n_x, |x| params.utility_w_at(p, x)).0)
}

/// Grid maximiser of `U_D(., x)`.
pub fn grid_best_p(params: &ModelParams, x: f64, n_p: usize, utility: GovernmentUtility) -> Result<f64> {
    params.validate()?;
    check_unit("x", x)?;
    check_n("n_p", n_p)?;
    Ok(match utility {
        GovernmentUtility::Linear => argmax(n_p, |p| params.utility_d_linear_at(p, x)).0,
        GovernmentUtility::RiskAverse => argmax(n_p, |p| params.utility_d_risk_averse_at(p, x)).0,
    })
}

/// A grid point together with the larger of the two players' unilateral gains.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridPoint {
    pub p: f64,
    pub x: f64,
    pub gain: f64,
}

/// A connected group of epsilon-equilibrium grid points.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridCluster {
    /// Members in row-major order (by `p`, then `x`).
    pub members: Vec<GridPoint>,
    pub centroid: StrategyPoint,
    /// Centroids of the groups of exact grid equilibria (zero gain) inside
    /// the cluster, linked within [`CORE_LINK_CELLS`]; the minimum-gain
    /// member if there are none.
    pub cores: Vec<StrategyPoint>,
}

impl GridCluster {
    /// Chebyshev distance, in grid cells, from `(p, x)` to the nearest member.
    pub fn cell_distance(&self, p: f64, x: f64, grid: &GridSpec) -> f64 {
        self.members
            .iter()
            .map(|m| ((m.p - p).abs() / grid.p_spacing()).max((m.x - x).abs() / grid.x_spacing()))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Brute-force epsilon-Nash enumeration with the risk-averse government.
///
/// A grid point qualifies when neither player gains more than `grid.eps` by
/// moving to another grid value of their own coordinate. Qualifying points
/// are grouped by 8-adjacency.
pub fn grid_nash(params: &ModelParams, grid: &GridSpec) -> Result<Vec<GridCluster>> {
    params.validate()?;
    grid.validate()?;
    let (n_p, n_x) = (grid.n_p, grid.n_x);
    let ps: Vec<f64> = (0..n_p).map(|i| grid_point(0.0, 1.0, i, n_p)).collect();
    let xs: Vec<f64> = (0..n_x).map(|j| grid_point(0.0, 1.0, j, n_x)).collect();

    let mut u_w = vec![0.0; n_p * n_x];
    let mut u_d = vec![0.0; n_p * n_x];
    for (i, &p) in ps.iter().enumerate() {
        for (j, &x) in xs.iter().enumerate() {
            u_w[i * n_x + j] = params.utility_w_at(p, x);
            u_d[i * n_x + j] = params.utility_d_risk_averse_at(p, x);
        }
    }
    let row_max: Vec<f64> = (0..n_p)
        .map(|i| u_w[i * n_x..(i + 1) * n_x].iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let col_max: Vec<f64> = (0..n_x)
        .map(|j| (0..n_p).map(|i| u_d[i * n_x + j]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let gain: Vec<f64> = (0..n_p * n_x)
        .map(|idx| (row_max[idx / n_x] - u_w[idx]).max(col_max[idx % n_x] - u_d[idx]))
        .collect();

    let qualifies: Vec<bool> = gain.iter().map(|&g| g <= grid.eps).collect();
    let mut clusters = Vec::new();
    for component in components(&qualifies, n_p, n_x, 1) {
        let members: Vec<GridPoint> = component
            .iter()
            .map(|&idx| GridPoint {
                p: ps[idx / n_x],
                x: xs[idx % n_x],
                gain: gain[idx],
            })
            .collect();
        let centroid = centroid(params, component.iter().map(|&idx| (ps[idx / n_x], xs[idx % n_x])));

        let mut exact = vec![false; n_p * n_x];
        for &idx in &component {
            exact[idx] = gain[idx] <= 0.0;
        }
        let mut cores: Vec<StrategyPoint> = components(&exact, n_p, n_x, CORE_LINK_CELLS)
            .into_iter()
            .map(|c| centroid_of(params, &c, &ps, &xs, n_x))
            .collect();
        if cores.is_empty() {
            let best = members
                .iter()
                .fold(members[0], |acc, m| if m.gain < acc.gain { *m } else { acc });
            cores.push(params.point_at(best.p, best.x));
        }
        clusters.push(GridCluster {
            members,
            centroid,
            cores,
        });
    }
    Ok(clusters)
}

fn centroid_of(params: &ModelParams, cells: &[usize], ps: &[f64], xs: &[f64], n_x: usize) -> StrategyPoint {
    centroid(params, cells.iter().map(|&idx| (ps[idx / n_x], xs[idx % n_x])))
}

fn centroid(params: &ModelParams, cells: impl Iterator<Item = (f64, f64)>) -> StrategyPoint {
    let (mut sp, mut sx, mut n) = (0.0, 0.0, 0.0);
    for (p, x) in cells {
        sp += p;
        sx += x;
        n += 1.0;
    }
    params.point_at(sp / n, sx / n)
}

/// Components of the `true` cells, linking cells within Chebyshev distance
/// `reach`; each is sorted row-major, in order of its first cell.
fn components(mask: &[bool], n_p: usize, n_x: usize, reach: i64) -> Vec<Vec<usize>> {
    let mut seen = vec![false; mask.len()];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..mask.len() {
        if !mask[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut component = Vec::new();
        while let Some(idx) = stack.pop() {
            component.push(idx);
            let (i, j) = (idx / n_x, idx % n_x);
            for di in -reach..=reach {
                for dj in -reach..=reach {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= n_p as i64 || nj >= n_x as i64 {
                        continue;
                    }
                    let n_idx = ni as usize * n_x + nj as usize;
                    if mask[n_idx] && !seen[n_idx] {
                        seen[n_idx] = true;
                        stack.push(n_idx);
                    }
                }
            }
        }
        component.sort_unstable();
        out.push(component);
    }
    out
}

/// Grid argmax of a unimodal sequence, smallest index on ties.
///
/// Discrete ternary search narrows the range, then a short linear scan
/// settles the exact argmax. Valid whenever `f` is concave along the grid.
fn unimodal_argmax<F: Fn(f64) -> f64>(n: usize, f: F) -> f64 {
    let at = |i: usize| f(grid_point(0.0, 1.0, i, n));
    let (mut lo, mut hi) = (0usize, n - 1);
    while hi - lo > 8 {
        let m1 = lo + (hi - lo) / 3;
        let m2 = hi - (hi - lo) / 3;
        if at(m1) >= at(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let mut best = (lo, at(lo));
    for i in lo + 1..=hi {
        let v = at(i);
        if v > best.1 {
            best = (i, v);
        }
    }
    // Confirm nothing to the left ties the maximum found.
    while best.0 > 0 && at(best.0 - 1) >= best.1 {
        best.0 -= 1;
    }
    grid_point(0.0, 1.0, best.0, n)
}

/// Grid maximiser of `U_W(p, .)` found by ternary search, exact whenever
/// `U_W` is concave in `x` (falls back to a full scan otherwise).
pub fn grid_best_x_fast(params: &ModelParams, p: f64, n_x: usize) -> Result<f64> {
    params.validate()?;
    check_unit("p", p)?;
    check_n("n_x", n_x)?;
    Ok(best_x_fast(params, p, n_x))
}

fn best_x_fast(params: &ModelParams, p: f64, n_x: usize) -> f64 {
    if params.wealthy_curvature(p) <= 0.0 {
        unimodal_argmax(n_x, |x| params.utility_w_at(p, x))
    } else {
        argmax(n_x, |x| params.utility_w_at(p, x)).0
    }
}

/// Brute-force leader-follower solution: for every grid `p` the wealthy play
/// their grid best response, and the government keeps the `p` with the
/// largest linear utility.
///
/// The follower's grid argmax uses the concave ternary search, so `n_x` can
/// be far larger than `n_p`; grid rounding in `x` otherwise shifts the
/// leader's argmax by several cells on flat objectives.
pub fn grid_stackelberg(params: &ModelParams, grid: &GridSpec) -> Result<StrategyPoint> {
    params.validate()?;
    grid.validate()?;
    let mut best: Option<(f64, f64, f64)> = None;
    for i in 0..grid.n_p {
        let p = grid_point(0.0, 1.0, i, grid.n_p);
        let x = best_x_fast(params, p, grid.n_x);
        let u = params.utility_d_linear_at(p, x);
        if best.is_none_or(|(_, _, b)| u > b) {
            best = Some((p, x, u));
        }
    }
    let (p, x, _) = best.expect("grid has at least two points");
    Ok(params.point_linear_at(p, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn remark() -> ModelParams {
        ModelParams::new(0.7, 4.0, 0.126025, 0.8, 0.1).unwrap()
    }

    #[test]
    fn best_x_at_zero_seizure_with_lossless_crypto() {
        let params = ModelParams::new(0.5, 1.0, 1.0, 1.0, 0.1).unwrap();
        assert_eq!(grid_best_x(&params, 0.0, 1001).unwrap(), 0.0);
    }

    #[test]
    fn best_p_variants() {
        let params = remark();
        // Stationary point k (1 - x) / (2 dD2) clamped to [0, 1].
        let x = 0.8;
        let expected = (params.k * (1.0 - x) / (2.0 * params.dd2)).clamp(0.0, 1.0);
        let got = grid_best_p(&params, x, 2001, GovernmentUtility::RiskAverse).unwrap();
        assert!((got - expected).abs() <= 1.0 / 2000.0);
        assert_eq!(grid_best_p(&params, 0.3, 2001, GovernmentUtility::Linear).unwrap(), 1.0);
        assert_eq!(grid_best_p(&params, 1.0, 2001, GovernmentUtility::Linear).unwrap(), 0.0);
    }

    #[test]
    fn ternary_argmax_matches_full_scan() {
        let params = remark();
        for i in 0..=50 {
            let p = i as f64 / 50.0;
            for n in [2, 3, 10, 401, 1000] {
                assert_eq!(
                    grid_best_x_fast(&params, p, n).unwrap(),
                    grid_best_x(&params, p, n).unwrap(),
                    "p={p} n={n}"
                );
            }
        }
        // Flat utility: every x ties, smallest wins.
        let flat = ModelParams::new(0.5, 0.0, 0.0, 1.0, 0.1).unwrap();
        assert_eq!(grid_best_x_fast(&flat, 0.0, 1001).unwrap(), 0.0);
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(1, 10, 1e-3).is_err());
        assert!(GridSpec::new(10, 10, 0.0).is_err());
        assert!(GridSpec::new(10, 10, 1e-3).is_ok());
    }

    #[test]
    fn components_use_eight_adjacency() {
        #[rustfmt::skip]
        let mask = [
            true,  false, false,
            false, true,  false,
            false, false, false,
            true,  false, true,
        ];
        let comps = components(&mask, 4, 3, 1);
        assert_eq!(comps, vec![vec![0, 4], vec![9], vec![11]]);
        assert_eq!(components(&mask, 4, 3, 2), vec![vec![0, 4, 9, 11]]);
    }

    #[test]
    fn stackelberg_zero_attractiveness() {
        let params = ModelParams::new(0.5, 0.0, 0.0, 1.0, 0.1).unwrap();
        let grid = GridSpec::new(401, 401, 1e-3).unwrap();
        let pt = grid_stackelberg(&params, &grid).unwrap();
        assert_eq!((pt.p, pt.x), (0.0, 0.0));
    }

    #[test]
    fn stackelberg_unattractive_crypto() {
        let params = ModelParams::new(0.3, 4.0, 0.0, 0.8, 0.1).unwrap();
        let grid = GridSpec::new(401, 401, 1e-3).unwrap();
        assert_eq!(grid_stackelberg(&params, &grid).unwrap().p, 1.0);
    }
}
