#![allow(dead_code)]

use cryptoeq_core::ModelParams;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Broad uniform draw over the valid parameter box used throughout the tests.
pub fn random_params(rng: &mut ChaCha8Rng) -> ModelParams {
    ModelParams::new(
        rng.gen_range(0.05..=1.0),
        rng.gen_range(0.05..=10.0),
        rng.gen_range(0.01..=2.0),
        rng.gen_range(0.0..=1.0),
        rng.gen_range(0.001..=1.0),
    )
    .unwrap()
}

/// Rejection-samples `random_params` until `accept` holds.
pub fn random_params_where(rng: &mut ChaCha8Rng, accept: impl Fn(&ModelParams) -> bool) -> ModelParams {
    loop {
        let params = random_params(rng);
        if accept(&params) {
            return params;
        }
    }
}

pub fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| i as f64 / (n - 1) as f64)
}
