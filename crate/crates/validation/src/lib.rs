//! Reference implementations used to check the `kirkwood` crate, and the
//! acceptance suite in `tests/acceptance.rs` (`cargo test -p
//! kirkwood-validation --test acceptance`).

pub mod oracle;

#[cfg(test)]
mod agreement;

use kirkwood::Complex64;
use rand::Rng;

/// Random polyline with `segments` segments inside the unit square.
pub fn random_polyline<R: Rng>(rng: &mut R, segments: usize) -> Vec<Complex64> {
    (0..=segments)
        .map(|_| Complex64::new(rng.gen::<f64>(), rng.gen::<f64>()))
        .collect()
}

/// `n ≥ 2` evenly spaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| start + (end - start) * k as f64 / (n - 1) as f64)
        .collect()
}
