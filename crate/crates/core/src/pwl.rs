//! Equipartite piecewise-linear periodic interpolants.
//!
//! `L_X` is the continuous 2π-periodic function that is linear on each
//! `[2π(j-1)/n, 2πj/n]` and takes the value `x_j` at `t_j = 2πj/n`. Its
//! energies are exact quadratic forms in the knot values:
//!
//! ```text
//! ∫ L_X²   = (2π/3n) Σ (2x_j² + x_j x_{j-1})
//! ∫ L_X'²  = (n/π)   Σ (x_j² - x_j x_{j-1})
//! ∫ L_X L_Y = (4π/3n)⟨X,Y⟩ + (π/3n)⟨TX,Y⟩ + (π/3n)⟨X,TY⟩
//! ```

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::sample::SampleVector;
use crate::spectral::lattice_angle;
use crate::sum::{self, CompensatedSum};

fn require_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidSize {
            n,
            reason: "piecewise-linear interpolants require n >= 4",
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    knots: SampleVector,
}

impl PiecewiseLinear {
    pub fn new(knots: SampleVector) -> Result<Self> {
        require_n(knots.len())?;
        Ok(Self { knots })
    }

    pub fn n(&self) -> usize {
        self.knots.len()
    }

    pub fn knots(&self) -> &SampleVector {
        &self.knots
    }

    /// Locates `t` as `(segment, fraction)`: segment `s` spans
    /// `[t_s, t_{s+1}]` with `t_0 = 0`, and `fraction ∈ [0, 1)`.
    /// A `t` within rounding of a knot snaps onto it.
    fn locate(&self, t: f64) -> (usize, f64) {
        let n = self.n();
        let u = t.rem_euclid(TAU) * n as f64 / TAU;
        let nearest = u.round();
        if (u - nearest).abs() <= 4.0 * f64::EPSILON * u.max(1.0) {
            return ((nearest as usize) % n, 0.0);
        }
        let s = (u.floor() as usize).min(n - 1);
        (s, u - s as f64)
    }

    /// `L_X(t)`, for any real `t`.
    pub fn eval(&self, t: f64) -> f64 {
        let (s, frac) = self.locate(t);
        let left = self.knots.x(s as i64);
        if frac == 0.0 {
            return left;
        }
        let right = self.knots.x(s as i64 + 1);
        left + frac * (right - left)
    }

    /// `L_X'(t)` on the segment containing `t`; at a knot, the segment to its right.
    pub fn slope(&self, t: f64) -> f64 {
        let (s, _) = self.locate(t);
        let h = TAU / self.n() as f64;
        (self.knots.x(s as i64 + 1) - self.knots.x(s as i64)) / h
    }
}

/// `∫₀²π L_X² dt`.
pub fn energy_l2(x: &SampleVector) -> Result<f64> {
    let n = x.len();
    require_n(n)?;
    let mut acc = CompensatedSum::new();
    for j in 1..=n as i64 {
        let xj = x.x(j);
        acc.add_product(2.0 * xj, xj);
        acc.add_product(xj, x.x(j - 1));
    }
    Ok(TAU / (3.0 * n as f64) * acc.value())
}

/// `∫₀²π L_X'² dt`.
///
/// Each term `x_j² - x_j x_{j-1}` is accumulated as `x_j (x_j - x_{j-1})`,
/// which keeps the small difference for smooth data.
pub fn energy_h1(x: &SampleVector) -> Result<f64> {
    let n = x.len();
    require_n(n)?;
    let mut acc = CompensatedSum::new();
    for j in 1..=n as i64 {
        let xj = x.x(j);
        acc.add_product(xj, xj - x.x(j - 1));
    }
    Ok(n as f64 / PI * acc.value())
}

/// `⟨L_X, L_Y⟩ = ∫₀²π L_X L_Y dt` via the polarization identity.
pub fn inner_product(x: &SampleVector, y: &SampleVector) -> Result<f64> {
    x.check_len(y)?;
    let n = x.len();
    require_n(n)?;
    let xy = sum::dot(x.values(), y.values());
    let mut cross = CompensatedSum::new();
    for j in 1..=n as i64 {
        cross.add_product(x.x(j - 1), y.x(j));
        cross.add_product(x.x(j), y.x(j - 1));
    }
    let nf = n as f64;
    Ok(4.0 * PI / (3.0 * nf) * xy + PI / (3.0 * nf) * cross.value())
}

/// `‖L_e‖² = (4π/3n)(1 + ½ cos(2πk/n))` for the unit cosine and sine basis
/// vectors of rotation block `k`.
pub fn basis_norm(n: usize, k: usize) -> Result<f64> {
    require_n(n)?;
    let max = (n - 1) / 2;
    if k == 0 || k > max {
        return Err(Error::BlockOutOfRange { k, max });
    }
    let nf = n as f64;
    Ok(4.0 * PI / (3.0 * nf) * (1.0 + 0.5 * lattice_angle(k, n).cos()))
}
