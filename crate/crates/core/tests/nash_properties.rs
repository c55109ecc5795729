mod common;

use cryptoeq_core::best_response::{condpos_holds, monotone_condition_holds, x1, x2_raw};
use cryptoeq_core::oracle::{grid_nash, GridSpec};
use cryptoeq_core::{conditions_report, find_nash, verify_nash, ModelParams, SolverOptions};

fn opts() -> SolverOptions {
    SolverOptions::default()
}

#[test]
fn residuals_and_verification_on_random_draws() {
    let mut rng = common::rng(21);
    let mut seen = 0;
    for _ in 0..1000 {
        let params = common::random_params(&mut rng);
        let out = find_nash(&params, &opts()).unwrap();
        let ps: Vec<f64> = out.equilibria.iter().map(|e| e.point.p).collect();
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        for eq in &out.equilibria {
            seen += 1;
            let (p, x) = (eq.point.p, eq.point.x);
            assert!((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&x));
            let r = (x1(&params, p).unwrap() - x2_raw(&params, p).unwrap()).abs();
            assert!(r <= 1e-9, "{params:?} residual {r}");
            let check = verify_nash(&params, &eq.point, 10_000, 1e-6).unwrap();
            assert!(check.is_nash(), "{params:?} {check:?}");
        }
    }
    assert!(seen > 100);
}

#[test]
fn monotone_condition_gives_at_most_one() {
    let mut rng = common::rng(22);
    for _ in 0..1000 {
        let params = common::random_params_where(&mut rng, monotone_condition_holds);
        let out = find_nash(&params, &opts()).unwrap();
        assert!(out.equilibria.len() <= 1, "{params:?}");
    }
}

#[test]
fn printed_condpos_multiplicity_needs_attractiveness_above_k() {
    // The printed test does not bound A by k, so several crossings remain
    // possible; each such draw must violate the monotone condition.
    let mut rng = common::rng(23);
    for _ in 0..1000 {
        let params = common::random_params_where(&mut rng, condpos_holds);
        let out = find_nash(&params, &opts()).unwrap();
        if out.equilibria.len() > 1 {
            assert!(!monotone_condition_holds(&params), "{params:?}");
        }
    }
}

#[test]
fn printed_condpos_admits_two_equilibria() {
    // (1 + 2 d2)(1 - mY) = 0.171 <= k, but A = 3.29 > k and x2 turns down
    // after p = 0.59, crossing x1 twice.
    let params = ModelParams::new(
        0.8915316155251722,
        6.673488143451936,
        0.31558411476140463,
        0.988093519198628,
        0.24569366490544534,
    )
    .unwrap();
    assert!(condpos_holds(&params));
    assert!(!monotone_condition_holds(&params));
    let out = find_nash(&params, &opts()).unwrap();
    assert_eq!(out.equilibria.len(), 2, "{out:?}");
    let grid = GridSpec::new(2001, 2001, 1e-7).unwrap();
    let clusters = grid_nash(&params, &grid).unwrap();
    for eq in &out.equilibria {
        assert!(verify_nash(&params, &eq.point, 100_001, 1e-9).unwrap().is_nash());
        let d = clusters
            .iter()
            .map(|c| c.cell_distance(eq.point.p, eq.point.x, &grid))
            .fold(f64::INFINITY, f64::min);
        assert!(d <= 1.0, "{eq:?}");
    }
    // The two crossings sit in separate grid clusters.
    assert!(clusters.len() >= 2);
}

#[test]
fn existence_conditions_give_at_least_one() {
    let mut rng = common::rng(24);
    let mut by_case = [0usize; 2];
    for _ in 0..1000 {
        let params = common::random_params_where(&mut rng, |p| {
            conditions_report(p).unwrap().existence_guaranteed
        });
        let report = conditions_report(&params).unwrap();
        by_case[(report.pc >= 1.0) as usize] += 1;
        let out = find_nash(&params, &opts()).unwrap();
        assert!(!out.equilibria.is_empty(), "{params:?} {report:?}");
    }
    assert!(by_case[0] > 0 && by_case[1] > 0, "{by_case:?}");
}

#[test]
fn case_split_follows_pc() {
    let mut rng = common::rng(25);
    for _ in 0..1000 {
        let params = common::random_params(&mut rng);
        let report = conditions_report(&params).unwrap();
        assert_eq!(report.pc, params.k / (2.0 * params.dd2));
        assert_eq!(report.pc < 1.0, report.case == cryptoeq_core::ExistenceCase::PcBelowOne);
        assert_eq!(report.existence_guaranteed, report.existence_condition_holds);
        assert_eq!(report.uniqueness_guaranteed, report.monotone_condition_holds);
    }
}

#[test]
fn pc_exactly_one_is_case_b() {
    let params = ModelParams::new(0.5, 1.0, 0.25, 0.9, 0.1).unwrap();
    let report = conditions_report(&params).unwrap();
    assert_eq!(report.pc, 1.0);
    assert_eq!(report.case, cryptoeq_core::ExistenceCase::PcAtLeastOne);
}

#[test]
fn every_solution_lies_next_to_a_grid_cluster() {
    let mut rng = common::rng(26);
    let grid = GridSpec::new(400, 400, 2e-3).unwrap();
    for _ in 0..60 {
        let params = common::random_params(&mut rng);
        let out = find_nash(&params, &opts()).unwrap();
        if out.equilibria.is_empty() {
            continue;
        }
        let clusters = grid_nash(&params, &grid).unwrap();
        for eq in &out.equilibria {
            let d = clusters
                .iter()
                .map(|c| c.cell_distance(eq.point.p, eq.point.x, &grid))
                .fold(f64::INFINITY, f64::min);
            assert!(d <= 1.0, "{params:?} {eq:?} distance {d}");
        }
    }
}

#[test]
fn serial_scan_is_deterministic() {
    let mut rng = common::rng(27);
    for _ in 0..50 {
        let params = common::random_params(&mut rng);
        assert_eq!(find_nash(&params, &opts()), find_nash(&params, &opts()));
    }
}
