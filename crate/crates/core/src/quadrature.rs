//! Adaptive Simpson quadrature with interval bisection.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveSimpson {
    /// Absolute tolerance for the whole interval, split in proportion to width.
    pub abs_tol: f64,
    pub max_depth: u32,
    /// Number of equal panels the interval is cut into before adapting.
    ///
    /// Periodic integrands such as `sin²(4t)` vanish on coarse dyadic grids,
    /// which makes a single starting panel report a converged 0. With `m`
    /// panels the first estimate sees `2m + 1` points, so no non-zero
    /// trigonometric polynomial of degree `<= m` can hide from it.
    pub initial_panels: usize,
}

impl Default for AdaptiveSimpson {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_depth: 40,
            initial_panels: 31,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the local `|S₂ - S₁| / 15` estimates.
    pub error_estimate: f64,
    /// Sub-intervals that reached `max_depth` without meeting their tolerance.
    pub unresolved: usize,
    pub evaluations: usize,
}

struct Acc {
    error: f64,
    unresolved: usize,
    evaluations: usize,
}

impl AdaptiveSimpson {
    pub fn with_tolerance(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Quadrature {
        let panels = self.initial_panels.max(1);
        let width = (b - a) / panels as f64;
        let panel_tol = self.abs_tol / panels as f64;
        let mut acc = Acc {
            error: 0.0,
            unresolved: 0,
            evaluations: 0,
        };
        let mut value = 0.0;
        let mut fa = f(a);
        acc.evaluations += 1;
        for p in 0..panels {
            let lo = a + width * p as f64;
            let hi = if p + 1 == panels { b } else { lo + width };
            let mid = 0.5 * (lo + hi);
            let fm = f(mid);
            let fb = f(hi);
            acc.evaluations += 2;
            let whole = simpson(lo, hi, fa, fm, fb);
            value += self.refine(&f, lo, mid, hi, fa, fm, fb, whole, panel_tol, 0, &mut acc);
            fa = fb;
        }
        Quadrature {
            value,
            error_estimate: acc.error,
            unresolved: acc.unresolved,
            evaluations: acc.evaluations,
        }
    }

    /// Like [`integrate`](Self::integrate), but every sub-interval must meet
    /// its tolerance.
    pub fn integrate_strict<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        let q = self.integrate(f, a, b);
        if !q.value.is_finite() {
            return Err(Error::NonFinite(format!(
                "integral evaluated to {}",
                q.value
            )));
        }
        if q.unresolved > 0 {
            return Err(Error::QuadratureFailure {
                tolerance: self.abs_tol,
                unresolved: q.unresolved,
            });
        }
        Ok(q.value)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        a: f64,
        m: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        acc: &mut Acc,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        acc.evaluations += 2;
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            acc.error += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        if depth >= self.max_depth {
            acc.error += delta.abs() / 15.0;
            acc.unresolved += 1;
            return left + right + delta / 15.0;
        }
        let half = 0.5 * tol;
        self.refine(f, a, lm, m, fa, flm, fm, left, half, depth + 1, acc)
            + self.refine(f, m, rm, b, fm, frm, fb, right, half, depth + 1, acc)
    }
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn polynomials_exact() {
        let q = AdaptiveSimpson::default();
        let v = q
            .integrate_strict(|x| x * x * x - 2.0 * x, 0.0, 3.0)
            .unwrap();
        assert!((v - (81.0 / 4.0 - 9.0)).abs() < 1e-12);
    }

    #[test]
    fn trig_integrals() {
        let q = AdaptiveSimpson::default();
        let v = q.integrate_strict(|t| t.sin().powi(2), 0.0, TAU).unwrap();
        assert!((v - PI).abs() < 1e-10);
        // Zero on every multiple of π/4: a single-panel start would return 0.
        let v = q
            .integrate_strict(|t| (4.0 * t).sin().powi(2), 0.0, TAU)
            .unwrap();
        assert!((v - PI).abs() < 1e-10);
        let v = q.integrate_strict(|t| t.exp(), 0.0, 1.0).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn kinks_resolved_to_tolerance() {
        let q = AdaptiveSimpson::with_tolerance(1e-11);
        let v = q.integrate(|t: f64| (t - 1.0).abs(), 0.0, 3.0);
        assert!((v.value - 2.5).abs() < 1e-11);
    }

    #[test]
    fn jump_reports_unresolved() {
        let q = AdaptiveSimpson {
            abs_tol: 1e-14,
            max_depth: 10,
            initial_panels: 3,
        };
        let f = |t: f64| if t < 0.123_456 { 0.0 } else { 1.0 };
        assert!(q.integrate(f, 0.0, 1.0).unresolved > 0);
        assert!(matches!(
            q.integrate_strict(f, 0.0, 1.0),
            Err(Error::QuadratureFailure { .. })
        ));
    }
}
