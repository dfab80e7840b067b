//! Compensated accumulation built from error-free transformations.
//!
//! `CompensatedSum` is the Neumaier variant of Kahan summation; `dot` pairs it
//! with an FMA-based exact product so that both the product and the addition
//! errors are carried in the compensation term (the "Dot2" scheme).

/// Running sum with a second word that collects the rounding error of each step.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bp = s - a;
    let e = (a - (s - bp)) + (b - bp);
    (s, e)
}

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.compensation += e;
    }

    /// Adds `a * b` with the product error folded into the compensation.
    #[inline]
    pub fn add_product(&mut self, a: f64, b: f64) {
        let (p, pe) = two_product(a, b);
        let (s, se) = two_sum(self.sum, p);
        self.sum = s;
        self.compensation += pe + se;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Compensated dot product of two equal-length slices.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = CompensatedSum::new();
    for (&x, &y) in a.iter().zip(b) {
        acc.add_product(x, y);
    }
    acc.value()
}

/// Compensated sum of squares.
pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

/// Uncompensated dot product with independent accumulators.
///
/// Used only for bulk orthogonality residuals where O(n^3) work makes the
/// compensated version too slow and the tolerance is far above n·ε.
pub fn dot_fast(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut lanes = [0.0f64; 8];
    let chunks = a.len() / 8;
    for c in 0..chunks {
        let base = c * 8;
        for l in 0..8 {
            lanes[l] += a[base + l] * b[base + l];
        }
    }
    let mut tail = 0.0;
    for i in chunks * 8..a.len() {
        tail += a[i] * b[i];
    }
    lanes.iter().sum::<f64>() + tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(sum(xs), 2.0);
        let naive: f64 = xs.iter().sum();
        assert_ne!(naive, 2.0);
    }

    #[test]
    fn dot_exact_on_ill_conditioned_pair() {
        // x·y = 1 exactly, but the partial sums cancel catastrophically.
        let x = [1e10, 1.0, -1e10];
        let y = [1e10, 1.0, 1e10];
        assert_eq!(dot(&x, &y), 1.0);
    }

    #[test]
    fn fast_dot_matches_on_benign_input() {
        let a: Vec<f64> = (0..37).map(|i| (i as f64 * 0.37).sin()).collect();
        let b: Vec<f64> = (0..37).map(|i| (i as f64 * 0.11).cos()).collect();
        assert!((dot(&a, &b) - dot_fast(&a, &b)).abs() < 1e-13);
    }
}
