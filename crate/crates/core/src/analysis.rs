//! From sampled periodic functions back to the continuous inequality.
//!
//! A C¹ 2π-periodic `f` is sampled at `t_j = 2πj/n`, interpolated piecewise
//! linearly and fed through the discrete machinery. As `n` grows the
//! interpolant energies converge to `∫f²` and `∫f'²`, the block energies of
//! the samples above frequency 1 vanish exactly for `a cos t + b sin t`, and
//! the per-block interpolant projections recover the Fourier coefficients.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::inequality::check_inequality;
use crate::pwl::{basis_norm, energy_h1, energy_l2, inner_product};
use crate::quadrature::AdaptiveSimpson;
use crate::sample::SampleVector;
use crate::spectral::{lattice_angle, CyclicBasis};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Number of interior probe points used to sanity-check a [`PeriodicFunction`].
pub const PROBE_POINTS: usize = 17;
const PERIODICITY_TOL: f64 = 1e-10;
const DERIVATIVE_TOL: f64 = 1e-6;
const DERIVATIVE_STEP: f64 = 1e-5;

/// A 2π-periodic C¹ function together with its derivative.
#[derive(Clone)]
pub struct PeriodicFunction {
    label: String,
    value: RealFn,
    derivative: RealFn,
}

impl fmt::Debug for PeriodicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicFunction")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl PeriodicFunction {
    /// Wraps `value` and `derivative`, probing periodicity and the derivative
    /// against central differences at 17 interior points.
    pub fn new<F, D>(label: impl Into<String>, value: F, derivative: D) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let func = Self {
            label: label.into(),
            value: Arc::new(value),
            derivative: Arc::new(derivative),
        };
        func.probe()?;
        Ok(func)
    }

    fn probe(&self) -> Result<()> {
        let fail = |reason: String| Error::InvalidFunction {
            label: self.label.clone(),
            reason,
        };
        // Midpoints of 17 equal cells: away from t = 0, where a C¹ periodic
        // extension may have a jump in f''.
        for p in 0..PROBE_POINTS {
            let t = TAU * (p as f64 + 0.5) / PROBE_POINTS as f64;
            let (v, d) = (self.value(t), self.derivative(t));
            if !v.is_finite() || !d.is_finite() {
                return Err(fail(format!("non-finite value or derivative at t={t}")));
            }
            let v_next = self.value(t + TAU);
            if (v_next - v).abs() > PERIODICITY_TOL * v.abs().max(1.0) {
                return Err(fail(format!("f(t+2π) ≠ f(t) at t={t}")));
            }
            let d_next = self.derivative(t + TAU);
            if (d_next - d).abs() > PERIODICITY_TOL * d.abs().max(1.0) {
                return Err(fail(format!("f'(t+2π) ≠ f'(t) at t={t}")));
            }
            let h = DERIVATIVE_STEP;
            let fd = (self.value(t + h) - self.value(t - h)) / (2.0 * h);
            if (fd - d).abs() > DERIVATIVE_TOL * d.abs().max(1.0) {
                return Err(fail(format!(
                    "derivative {d} disagrees with central difference {fd} at t={t}"
                )));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        (self.derivative)(t)
    }
}

fn require_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidSize {
            n,
            reason: "sampling requires n >= 4",
        });
    }
    Ok(())
}

/// `x_j = f(2πj/n)`, `j = 1..n`.
pub fn sample(f: &PeriodicFunction, n: usize) -> Result<SampleVector> {
    require_n(n)?;
    SampleVector::from_fn(n, |j| f.value(lattice_angle(j, n)))
}

/// `(∫₀²π f², ∫₀²π f'²)` by adaptive quadrature.
pub fn reference_energies(f: &PeriodicFunction) -> Result<(f64, f64)> {
    let q = AdaptiveSimpson::default();
    let l2 = q.integrate_strict(|t| f.value(t).powi(2), 0.0, TAU)?;
    let h1 = q.integrate_strict(|t| f.derivative(t).powi(2), 0.0, TAU)?;
    Ok((l2, h1))
}

/// `∫₀²π (f - g)²` by adaptive quadrature.
pub fn l2_distance_sq(f: &PeriodicFunction, g: &PeriodicFunction) -> Result<f64> {
    AdaptiveSimpson::default().integrate_strict(|t| (f.value(t) - g.value(t)).powi(2), 0.0, TAU)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    /// `m_n`, the mean of the samples.
    pub mean: f64,
    /// `∫ φ̃_n²` for the centered interpolant.
    pub energy_l2: f64,
    /// `∫ φ̃_n'²` for the centered interpolant.
    pub energy_h1: f64,
    /// `cos(2π/n) - Σ x_j x_{j-1}` on the centered, normalized samples.
    pub slack: f64,
    pub tail_energy: f64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub label: String,
    /// Sorted by `n`.
    pub rows: Vec<SweepRow>,
}

/// One row of the convergence table for each `n` in `ns`.
pub fn rayleigh_sweep(f: &PeriodicFunction, ns: &[usize]) -> Result<ConvergenceReport> {
    let mut sorted = ns.to_vec();
    sorted.sort_unstable();
    let rows = sorted
        .into_iter()
        .map(|n| sweep_row(f, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport {
        label: f.label().to_owned(),
        rows,
    })
}

fn sweep_row(f: &PeriodicFunction, n: usize) -> Result<SweepRow> {
    let start = Instant::now();
    let x = sample(f, n)?;
    let mean = x.mean();
    let centered = x.centered();
    let energy_l2 = energy_l2(&centered)?;
    let energy_h1 = energy_h1(&centered)?;
    let slack = check_inequality(&centered.center_normalize()?)?.slack;
    let tail_energy = sample_tail_energy(&x)?;
    Ok(SweepRow {
        n,
        mean,
        energy_l2,
        energy_h1,
        slack,
        tail_energy,
        elapsed: start.elapsed(),
    })
}

/// `(1/n) Σ_{k>=2} ‖P_k X_n‖²` for `X_n = sample(f, n)`.
///
/// For even `n` the alternating direction counts as the block `k = n/2`, so
/// the sum is non-empty from `n = 4` on.
pub fn tail_energy(f: &PeriodicFunction, n: usize) -> Result<f64> {
    sample_tail_energy(&sample(f, n)?)
}

fn sample_tail_energy(x: &SampleVector) -> Result<f64> {
    let n = x.len();
    let basis = CyclicBasis::new(n)?;
    let total = (2..=basis.max_frequency())
        .map(|k| basis.project(x, k))
        .sum::<Result<f64>>()?;
    Ok(total / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FourierMethod {
    DiscreteProjection,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierCoefficient {
    pub j: usize,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierTable {
    pub coefficients: Vec<FourierCoefficient>,
    pub method: FourierMethod,
}

impl FourierTable {
    pub fn jmax(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficients of harmonic `j >= 1`.
    pub fn get(&self, j: usize) -> Option<&FourierCoefficient> {
        j.checked_sub(1).and_then(|i| self.coefficients.get(i))
    }
}

/// Fourier coefficients read off the discrete blocks of the samples.
///
/// For each `j`, the block-`j` component `P_j X_n` is paired with interpolants
/// of the reference vectors `c_i = cos(j t_i)` and `s_i = sin(j t_i)`. Both
/// lie in the block plane and `‖L_c‖² = ‖L_s‖² = (n/2)·basis_norm(n, j)`, so
///
/// ```text
/// a_j = ⟨L_{P_j X}, L_c⟩ / ((n/2) basis_norm(n, j))
/// ```
///
/// and likewise for `b_j`. Pairing with sample-aligned references removes any
/// dependence on how the basis vectors are phased against the sample times.
pub fn fourier_discrete(f: &PeriodicFunction, n: usize, jmax: usize) -> Result<FourierTable> {
    if jmax == 0 {
        return Err(Error::InvalidSize {
            n,
            reason: "jmax must be at least 1",
        });
    }
    if n < 2 * jmax + 2 {
        return Err(Error::InvalidSize {
            n,
            reason: "aliasing guard: n must be at least 2*jmax + 2",
        });
    }
    let x = sample(f, n)?;
    let basis = CyclicBasis::new(n)?;
    let half = n as f64 / 2.0;
    let coefficients = (1..=jmax)
        .map(|j| {
            let component = basis.project_vector(&x, j)?;
            let c_ref = SampleVector::from_fn(n, |i| lattice_angle(i * j, n).cos())?;
            let s_ref = SampleVector::from_fn(n, |i| lattice_angle(i * j, n).sin())?;
            let norm = half * basis_norm(n, j)?;
            Ok(FourierCoefficient {
                j,
                a: inner_product(&component, &c_ref)? / norm,
                b: inner_product(&component, &s_ref)? / norm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FourierTable {
        coefficients,
        method: FourierMethod::DiscreteProjection,
    })
}

/// `a_j = (1/π)∫ f cos(jt)`, `b_j = (1/π)∫ f sin(jt)` by adaptive quadrature.
pub fn fourier_quadrature(f: &PeriodicFunction, jmax: usize) -> Result<FourierTable> {
    if jmax == 0 {
        return Err(Error::InvalidSize {
            n: 0,
            reason: "jmax must be at least 1",
        });
    }
    let q = AdaptiveSimpson::default();
    let coefficients = (1..=jmax)
        .map(|j| {
            let jf = j as f64;
            let a = q.integrate_strict(|t| f.value(t) * (jf * t).cos(), 0.0, TAU)? / PI;
            let b = q.integrate_strict(|t| f.value(t) * (jf * t).sin(), 0.0, TAU)? / PI;
            Ok(FourierCoefficient { j, a, b })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FourierTable {
        coefficients,
        method: FourierMethod::Quadrature,
    })
}

/// The trigonometric polynomial `Σ_{j<=J} (a_j cos jt + b_j sin jt)`.
pub fn partial_sum(table: &FourierTable, terms: usize) -> Result<PeriodicFunction> {
    if terms > table.jmax() {
        return Err(Error::RangeError(format!(
            "partial sum of {terms} terms from a table with jmax = {}",
            table.jmax()
        )));
    }
    let coeffs: Arc<[FourierCoefficient]> = table.coefficients[..terms].into();
    let for_value = Arc::clone(&coeffs);
    let value = move |t: f64| {
        for_value
            .iter()
            .map(|c| {
                let (s, co) = (c.j as f64 * t).sin_cos();
                c.a * co + c.b * s
            })
            .sum()
    };
    let derivative = move |t: f64| {
        coeffs
            .iter()
            .map(|c| {
                let jf = c.j as f64;
                let (s, co) = (jf * t).sin_cos();
                jf * (c.b * co - c.a * s)
            })
            .sum()
    };
    PeriodicFunction::new(format!("partial_sum[{terms}]"), value, derivative)
}
