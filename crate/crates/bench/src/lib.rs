//! Shared inputs for the benchmarks.

use simplex_bernstein::identities::test_points;
use simplex_bernstein::{Rational, SimplexPoint};

pub const SEED: u64 = 0x5EED;

/// A seeded interior point of the `k`-simplex with small denominators.
pub fn exact_point(k: usize) -> SimplexPoint<Rational> {
    // index 4 is the first random point after the fixed boundary ones
    test_points(k, 1, SEED).expect("k > 0").swap_remove(4)
}

pub fn float_point(k: usize) -> SimplexPoint<f64> {
    exact_point(k).to_f64()
}
