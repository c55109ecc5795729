mod common;

use cryptoeq_core::speculator::{crypto_stats, derive_crypto_stats, optimal_volatility, SpeculatorParams, VarianceMode};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn optimal_volatility_beats_random_alternatives() {
    let mut rng = common::rng(70);
    for _ in 0..1000 {
        let sp = SpeculatorParams::new(rng.gen_range(0.01..10.0), rng.gen_range(0.01..10.0), 0.3, 0.1, 0.2).unwrap();
        let vm = optimal_volatility(&sp);
        let best = sp.utility(vm);
        for _ in 0..1000 {
            let v = rng.gen_range(0.0..(10.0 * vm));
            assert!(best >= sp.utility(v), "{sp:?} v={v}");
        }
    }
}

/// Mean and variance of the two outcomes, enumerated directly.
fn two_point(q: f64, up: f64, down: f64) -> (f64, f64) {
    let mean = q * up + (1.0 - q) * down;
    let var = q * (up - mean) * (up - mean) + (1.0 - q) * (down - mean) * (down - mean);
    (mean, var)
}

#[test]
fn worked_example_outcomes() {
    // Outcomes 1.05 and 0.75 with probabilities 0.1 and 0.9.
    let sp = SpeculatorParams::new(1.0, 1.0, 0.1, 0.1, 0.5).unwrap();
    let stats = crypto_stats(&sp, 0.5, VarianceMode::Exact).unwrap();
    let (mean, var) = two_point(0.1, 1.05, 0.75);
    assert!((stats.m_y - mean).abs() < 1e-15);
    assert!((stats.sig_y2 - var).abs() < 1e-15);
    assert!((stats.m_y - 0.78).abs() < 1e-15);
    assert!((stats.sig_y2 - 0.0081).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exact_variance_matches_enumeration(
        q in 0.0..=1.0f64,
        r1 in 0.001..2.0f64,
        extra in 0.0..2.0f64,
        vm in 0.0..3.0f64,
    ) {
        let sp = SpeculatorParams::new(1.0, 1.0, q, r1, r1 + extra).unwrap();
        let stats = crypto_stats(&sp, vm, VarianceMode::Exact).unwrap();
        let (mean, var) = two_point(q, 1.0 + sp.r1 * vm, 1.0 - sp.r2 * vm);
        prop_assert!((stats.sig_y2 - var).abs() <= 1e-12);
        prop_assert!((stats.m_y - mean).abs() <= 1e-12);
        prop_assert!(stats.sig_y2 >= 0.0);
    }

    #[test]
    fn printed_variance_is_linear_in_volatility(
        q in 0.0..=1.0f64,
        r1 in 0.001..2.0f64,
        extra in 0.0..2.0f64,
        vm in 0.0..3.0f64,
    ) {
        let sp = SpeculatorParams::new(1.0, 1.0, q, r1, r1 + extra).unwrap();
        let once = crypto_stats(&sp, vm, VarianceMode::AsPrinted).unwrap();
        let twice = crypto_stats(&sp, 2.0 * vm, VarianceMode::AsPrinted).unwrap();
        prop_assert!((twice.sig_y2 - 2.0 * once.sig_y2).abs() <= 1e-15);
        let exact = crypto_stats(&sp, vm, VarianceMode::Exact).unwrap();
        prop_assert_eq!(once.m_y, exact.m_y);
    }

    #[test]
    fn mean_at_most_one_when_expected_loss(
        q in 0.0..=1.0f64,
        r1 in 0.001..2.0f64,
        r2 in 0.001..4.0f64,
        a1 in 0.01..10.0f64,
        a2 in 0.01..10.0f64,
    ) {
        prop_assume!(r2 >= r1 && q * r1 <= (1.0 - q) * r2);
        let sp = SpeculatorParams::new(a1, a2, q, r1, r2).unwrap();
        let stats = derive_crypto_stats(&sp, VarianceMode::Exact).unwrap();
        prop_assert!(stats.m_y <= 1.0, "{:?} {:?}", sp, stats);
        prop_assert!(!stats.mean_exceeds_one);
    }
}

#[test]
fn gain_heavy_outcomes_are_flagged() {
    let sp = SpeculatorParams::new(1.0, 1.0, 0.9, 0.5, 0.6).unwrap();
    let stats = derive_crypto_stats(&sp, VarianceMode::Exact).unwrap();
    assert!(stats.m_y > 1.0);
    assert!(stats.mean_exceeds_one);
}

#[test]
fn invalid_inputs_rejected() {
    assert!(SpeculatorParams::new(0.0, 1.0, 0.5, 0.1, 0.2).is_err());
    assert!(SpeculatorParams::new(1.0, -1.0, 0.5, 0.1, 0.2).is_err());
    assert!(SpeculatorParams::new(1.0, 1.0, 1.5, 0.1, 0.2).is_err());
    assert!(SpeculatorParams::new(1.0, 1.0, 0.5, 0.3, 0.2).is_err());
    let sp = SpeculatorParams::new(1.0, 1.0, 0.5, 0.1, 0.2).unwrap();
    assert!(crypto_stats(&sp, -1.0, VarianceMode::Exact).is_err());
    assert!(crypto_stats(&sp, f64::NAN, VarianceMode::Exact).is_err());
}
