//! Shared oracles for the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wirtinger::pwl::PiecewiseLinear;
use wirtinger::quadrature::AdaptiveSimpson;
use wirtinger::SampleVector;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform entries in `[-1, 1]`, deliberately not centered.
pub fn random_vector(n: usize, rng: &mut impl Rng) -> SampleVector {
    SampleVector::new((0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()).unwrap()
}

/// Segment-by-segment Simpson integration of `L²` and `L'²`.
///
/// `L` is linear on each segment, so `L²` is a quadratic there and `L'` is
/// constant: the rule is exact and only needs point values of the
/// interpolant, never the closed-form energies.
pub fn segment_simpson(l: &PiecewiseLinear) -> (f64, f64) {
    let n = l.n();
    let h = TAU / n as f64;
    let (mut l2, mut h1) = (0.0, 0.0);
    for s in 0..n {
        let a = TAU * s as f64 / n as f64;
        let b = TAU * (s + 1) as f64 / n as f64;
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (l.eval(a), l.eval(m), l.eval(b));
        l2 += (b - a) / 6.0 * (fa * fa + 4.0 * fm * fm + fb * fb);
        h1 += h * l.slope(m).powi(2);
    }
    (l2, h1)
}

/// Segment-exact `∫ L_X L_Y`.
pub fn segment_simpson_product(x: &PiecewiseLinear, y: &PiecewiseLinear) -> f64 {
    let n = x.n();
    (0..n)
        .map(|s| {
            let a = TAU * s as f64 / n as f64;
            let b = TAU * (s + 1) as f64 / n as f64;
            let m = 0.5 * (a + b);
            (b - a) / 6.0
                * (x.eval(a) * y.eval(a) + 4.0 * x.eval(m) * y.eval(m) + x.eval(b) * y.eval(b))
        })
        .sum()
}

/// Adaptive quadrature of `g` over one period that knows nothing about where
/// the knots are.
pub fn blind_integral(g: impl Fn(f64) -> f64, abs_tol: f64) -> f64 {
    AdaptiveSimpson::with_tolerance(abs_tol)
        .integrate(g, 0.0, TAU)
        .value
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}
