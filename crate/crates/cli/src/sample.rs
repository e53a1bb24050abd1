//! Seeded random points away from the singular lines of the kernels.

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum distance from the singular lines.
pub const CLEARANCE: f64 = 1e-3;

fn distance_to_pi_multiple(t: f64) -> f64 {
    let r = t.rem_euclid(PI);
    r.min(PI - r)
}

/// Whether `x`, `y`, `x + y` and `x − y` all stay at least [`CLEARANCE`] away from
/// multiples of `π`.
pub fn is_regular(x: f64, y: f64) -> bool {
    [x, y, x + y, x - y]
        .into_iter()
        .all(|t| distance_to_pi_multiple(t) >= CLEARANCE)
}

/// `count` points of `[−π, π)²` drawn with ChaCha8 from `seed`, rejecting those
/// that are not [`is_regular`].
pub fn regular_points(count: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: f64 = rng.random_range(-PI..PI);
        let y: f64 = rng.random_range(-PI..PI);
        if is_regular(x, y) {
            out.push((x, y));
        }
    }
    out
}
