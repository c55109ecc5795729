mod common;

use cryptoeq_core::ModelParams;
use proptest::prelude::*;

fn params_strategy() -> impl Strategy<Value = ModelParams> {
    (0.0..=1.0f64, 0.01..=10.0f64, 0.0..=2.0f64, 0.0..=1.0f64, 0.001..=1.0f64)
        .prop_map(|(k, d2, dd2, m_y, s)| ModelParams::new(k, d2, dd2, m_y, s).unwrap())
}

proptest! {
    #[test]
    fn utility_w_is_concave_in_x(params in params_strategy(), p in 0.0..=1.0f64, x in 0.05..=0.95f64) {
        let h = 1e-3;
        let u = |x: f64| params.utility_w(p, x).unwrap();
        let fd = (u(x + h) - 2.0 * u(x) + u(x - h)) / (h * h);
        let analytic = params.wealthy_curvature(p);
        prop_assert!(analytic < 0.0);
        // U_W is quadratic in x, so the central difference is exact up to rounding.
        prop_assert!((fd - analytic).abs() <= 1e-6 * analytic.abs().max(1e-2) + 1e-9 / (h * h),
            "fd {} analytic {}", fd, analytic);
    }

    #[test]
    fn home_variance_is_symmetric(params in params_strategy(), p in 0.0..=1.0f64) {
        let a = params.home_stats(p).unwrap().sig_f2;
        let b = params.home_stats(1.0 - p).unwrap().sig_f2;
        prop_assert!((a - b).abs() <= 1e-15);
        prop_assert!(a >= 0.0);
    }

    #[test]
    fn risk_averse_government_is_concave(params in params_strategy(), p in 0.05..=0.95f64, x in 0.0..=1.0f64) {
        let h = 1e-3;
        let u = |p: f64| params.utility_d_risk_averse(p, x).unwrap();
        let fd = (u(p + h) - 2.0 * u(p) + u(p - h)) / (h * h);
        prop_assert!((fd - params.government_curvature()).abs() <= 1e-6 * (1.0 + params.dd2) + 1e-9);
    }

    #[test]
    fn attractiveness_nonnegative(params in params_strategy()) {
        prop_assert!(params.attractiveness() >= 0.0);
    }
}

#[test]
fn concavity_relative_tolerance_on_random_draws() {
    let mut rng = common::rng(11);
    for _ in 0..1000 {
        let params = common::random_params(&mut rng);
        use rand::Rng;
        let p: f64 = rng.gen_range(0.0..=1.0);
        let x: f64 = rng.gen_range(0.1..=0.9);
        let h = 1e-2;
        let u = |x: f64| params.utility_w(p, x).unwrap();
        let fd = (u(x + h) - 2.0 * u(x) + u(x - h)) / (h * h);
        let analytic = params.wealthy_curvature(p);
        assert!(((fd - analytic) / analytic).abs() <= 1e-6, "{params:?} p={p} fd={fd} a={analytic}");
    }
}
