mod common;

use rand::Rng;

use cryptoeq_core::best_response::{x2_raw, xhat};
use cryptoeq_core::oracle::{grid_stackelberg, GridSpec};
use cryptoeq_core::{
    closed_form_pstar, leader_objective, solve_stackelberg, ModelParams, Regime, StackelbergOptions,
};

fn opts() -> StackelbergOptions {
    StackelbergOptions::default()
}

/// The printed closed form, independent of the solver's rearrangement.
fn textbook_pstar(params: &ModelParams) -> f64 {
    let (a, b, k) = (params.attractiveness(), params.sig_y2, params.k);
    b / (k * (k - a)) * ((1.0 + a / b * (k - a)).sqrt() - 1.0)
}

fn interior_below_k(params: &ModelParams) -> bool {
    let a = params.attractiveness();
    if !(a > 0.0 && a < params.k) {
        return false;
    }
    let p = textbook_pstar(params);
    let x = x2_raw(params, p.clamp(0.0, 1.0)).unwrap();
    x > 0.0 && x < 1.0
}

#[test]
fn leader_and_follower_optimality() {
    let mut rng = common::rng(31);
    for _ in 0..200 {
        let params = common::random_params(&mut rng);
        let sol = solve_stackelberg(&params, &opts()).unwrap();
        assert!((0.0..=1.0).contains(&sol.pstar));
        assert_eq!(sol.xstar, xhat(&params, sol.pstar).unwrap());
        for p in common::grid(10_000) {
            assert!(sol.u_d >= leader_objective(&params, p).unwrap() - 1e-9, "{params:?} p={p}");
        }
        for x in common::grid(10_000) {
            assert!(sol.u_w >= params.utility_w(sol.pstar, x).unwrap() - 1e-9);
        }
    }
}

#[test]
fn closed_form_agrees_with_numeric_argmax() {
    let mut rng = common::rng(32);
    for _ in 0..1000 {
        let params = common::random_params_where(&mut rng, interior_below_k);
        let sol = solve_stackelberg(&params, &opts()).unwrap();
        assert_eq!(sol.regime, Regime::ABelowK);
        assert!(sol.closed_form_used);
        assert!((sol.closed_form_pstar - textbook_pstar(&params)).abs() <= 1e-10);
        assert!(sol.closed_form_numeric_gap <= 1e-6, "{params:?} {sol:?}");
    }
}

#[test]
fn closed_form_used_implies_agreement() {
    let mut rng = common::rng(33);
    for _ in 0..1000 {
        let params = common::random_params(&mut rng);
        let sol = solve_stackelberg(&params, &opts()).unwrap();
        if sol.closed_form_used {
            assert!(sol.closed_form_numeric_gap <= 1e-6, "{params:?} {sol:?}");
        }
    }
}

#[test]
fn regime_matches_attractiveness() {
    let mut rng = common::rng(34);
    for _ in 0..1000 {
        let params = common::random_params(&mut rng);
        let cf = closed_form_pstar(&params).unwrap();
        let (a, k) = (params.attractiveness(), params.k);
        let expected = if a == 0.0 {
            Regime::AZero
        } else if a < k {
            Regime::ABelowK
        } else if a == k {
            Regime::AEqualsK
        } else if a < 2.0 * k {
            Regime::ABetweenK2K
        } else {
            Regime::AAbove2K
        };
        assert_eq!(cf.regime, expected);
        assert!((0.0..=1.0).contains(&cf.pstar));
        if cf.regime == Regime::AAbove2K {
            assert_eq!(cf.pstar, 1.0);
        }
    }
}

#[test]
fn between_regime_closed_form_tracks_interior_numeric() {
    // With mY = 1 and k < A < 2k the stationary curve stays inside [0, 1], so
    // the interior objective is the true one and the k < A < 2k rule must
    // match the numeric argmax.
    let mut rng = common::rng(35);
    for _ in 0..1000 {
        let k = rng.gen_range(0.05..1.0);
        let d2 = rng.gen_range(0.05..10.0);
        let a = k * rng.gen_range(1.0001..1.9999);
        let params = ModelParams::new(k, d2, 0.5, 1.0, a / (2.0 * d2)).unwrap();
        assert_eq!(closed_form_pstar(&params).unwrap().regime, Regime::ABetweenK2K);
        let interior = common::grid(2001).all(|p| {
            let x = x2_raw(&params, p).unwrap();
            (0.0..=1.0).contains(&x)
        });
        assert!(interior, "{params:?}");
        let sol = solve_stackelberg(&params, &opts()).unwrap();
        assert!(sol.closed_form_numeric_gap <= 1e-6, "{params:?} {sol:?}");
    }
}

#[test]
fn grid_oracle_agrees_within_one_cell() {
    let mut rng = common::rng(36);
    let grid = GridSpec::new(201, 1_000_001, 1e-3).unwrap();
    for _ in 0..1000 {
        let params = common::random_params(&mut rng);
        let sol = solve_stackelberg(&params, &opts()).unwrap();
        let oracle = grid_stackelberg(&params, &grid).unwrap();
        assert!(
            (oracle.p - sol.pstar).abs() <= grid.p_spacing(),
            "{params:?} oracle {oracle:?} solver {sol:?}"
        );
    }
}
