#![allow(dead_code)]

use fastpts::{Dataset, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// `q` uniform predictors plus intercept, `y = 1 + Σ x_j + N(0, 1)`, with the
/// first `outliers` responses shifted by +15.
pub fn random_regression(n: usize, q: usize, outliers: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = Matrix::from_fn(n, q, |_, _| rng.random_range(-3.0..3.0));
    let y = (0..n)
        .map(|i| {
            let e: f64 = rng.sample(StandardNormal);
            let shift = if i < outliers { 15.0 } else { 0.0 };
            1.0 + x.row(i).iter().sum::<f64>() + e + shift
        })
        .collect();
    Dataset::from_predictors(&x, y, true).unwrap()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
