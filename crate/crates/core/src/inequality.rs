//! The discrete Wirtinger inequality.
//!
//! For `n >= 4` and `X` with `Σx = 0`, `Σx² = 1`:
//!
//! ```text
//! Σ x_j x_{j-1}  <=  cos(2π/n)  <  (3n² - 4π²) / (3n² + 2π²)
//! ```
//!
//! The left bound is sharp and attained exactly on
//! `x_j = a cos(2πj/n) + b sin(2πj/n)` with `a² + b² = 2/n`. The right bound is
//! the piecewise-linear form of the continuous inequality and is never attained.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::eigen::{jacobi_eigen, DenseMatrix, DEFAULT_MAX_SWEEPS};
use crate::error::{Error, Result};
use crate::sample::SampleVector;
use crate::spectral::lattice_angle;

/// Absolute tolerance on `|mean|` and `|Σx² - 1|` accepted by [`check_inequality`].
pub const CONSTRAINT_TOL: f64 = 1e-10;
/// Slack above which a report counts as satisfied.
pub const SLACK_TOL: f64 = 1e-12;
/// Largest `n` accepted by the dense eigen-oracle.
pub const ORACLE_MAX_N: usize = 512;
/// Off-diagonal residual the Jacobi oracle must reach.
pub const ORACLE_RESIDUAL: f64 = 1e-12;

fn require_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidSize {
            n,
            reason: "the discrete inequality requires n >= 4",
        });
    }
    Ok(())
}

/// `cos(2π/n)`.
pub fn discrete_bound(n: usize) -> Result<f64> {
    require_n(n)?;
    Ok(lattice_angle(1, n).cos())
}

/// `(3n² - 4π²) / (3n² + 2π²)`.
pub fn piecewise_bound(n: usize) -> Result<f64> {
    require_n(n)?;
    let n2 = (n as f64).powi(2);
    let pi2 = PI * PI;
    Ok((3.0 * n2 - 4.0 * pi2) / (3.0 * n2 + 2.0 * pi2))
}

/// `x_i = a cos(2πi/n) + b sin(2πi/n)` for `i = 1..n`, with `a² + b² = 2/n`.
pub fn extremal_vector(n: usize, a: f64, b: f64) -> Result<SampleVector> {
    require_n(n)?;
    let r2 = a * a + b * b;
    let target = 2.0 / n as f64;
    if (r2 - target).abs() > 1e-12 {
        return Err(Error::ConstraintViolation(format!(
            "a² + b² = {r2} but extremal vectors need 2/n = {target}"
        )));
    }
    SampleVector::from_fn(n, |i| {
        let angle = lattice_angle(i, n);
        a.mul_add(angle.cos(), b * angle.sin())
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityReport {
    pub n: usize,
    pub correlation: f64,
    pub bound: f64,
    pub slack: f64,
    pub satisfied: bool,
}

/// Evaluates the sharp bound on a conforming vector.
pub fn check_inequality(x: &SampleVector) -> Result<InequalityReport> {
    let n = x.len();
    require_n(n)?;
    let status = x.constraint_status();
    if !status.is_conforming(CONSTRAINT_TOL) {
        return Err(Error::ConstraintViolation(format!(
            "need mean 0 and unit norm, got mean {:e} and norm² {}",
            status.mean, status.norm_sq
        )));
    }
    let correlation = x.cyclic_correlation();
    let bound = discrete_bound(n)?;
    let slack = bound - correlation;
    Ok(InequalityReport {
        n,
        correlation,
        bound,
        slack,
        satisfied: slack >= -SLACK_TOL,
    })
}

/// Result of the brute-force maximization.
#[derive(Debug, Clone)]
pub struct OracleMax {
    pub value: f64,
    pub argmax: SampleVector,
    pub sweeps: usize,
}

/// The matrix `A` of the shift, built column by column from `T(e_j)`.
pub fn shift_matrix(n: usize) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(n);
    for j in 0..n {
        let mut unit = vec![0.0; n];
        unit[j] = 1.0;
        let image = SampleVector::new(unit).expect("finite").shift();
        for (i, v) in image.values().iter().enumerate() {
            a.set(i, j, *v);
        }
    }
    a
}

/// Maximizes `⟨X, T X⟩` on `{Σx = 0, ‖X‖ = 1}` by diagonalizing the
/// symmetrized shift restricted to the mean-zero subspace.
///
/// The restriction uses the Householder reflector `H` that maps `(1, .., 1)`
/// onto a multiple of the first coordinate axis; columns `2..n` of `H` are an
/// orthonormal basis `Q` of the complement and the eigenproblem is solved for
/// `QᵀSQ`.
pub fn oracle_max(n: usize) -> Result<OracleMax> {
    require_n(n)?;
    if n > ORACLE_MAX_N {
        return Err(Error::InvalidSize {
            n,
            reason: "the dense eigen-oracle is capped at n = 512",
        });
    }
    let s = shift_matrix(n).symmetrized();

    // v = 1 + √n e_0, H = I - β v vᵀ, β = 2 / vᵀv.
    let sqrt_n = (n as f64).sqrt();
    let mut v = vec![1.0; n];
    v[0] += sqrt_n;
    let beta = 2.0 / v.iter().map(|x| x * x).sum::<f64>();

    // HSH = S - β v wᵀ - β w vᵀ + β² (vᵀw) v vᵀ with w = S v.
    let w = s.mul_vec(&v);
    let vw: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
    let hsh = DenseMatrix::from_fn(n, |i, j| {
        s.get(i, j) - beta * (v[i] * w[j] + w[i] * v[j]) + beta * beta * vw * v[i] * v[j]
    });
    let restricted = DenseMatrix::from_fn(n - 1, |i, j| hsh.get(i + 1, j + 1));

    let eig = jacobi_eigen(&restricted, ORACLE_RESIDUAL, DEFAULT_MAX_SWEEPS)?;
    let top = eig.argmax();
    let z = &eig.vectors[top];

    // x = H [0; z]
    let vz: f64 = v[1..].iter().zip(z).map(|(a, b)| a * b).sum();
    let mut x = vec![0.0; n];
    for i in 0..n {
        let zi = if i == 0 { 0.0 } else { z[i - 1] };
        x[i] = zi - beta * vz * v[i];
    }
    let argmax = SampleVector::new(x)?;
    let norm = argmax.norm();
    Ok(OracleMax {
        value: eig.values[top],
        argmax: argmax.scaled(1.0 / norm),
        sweeps: eig.sweeps,
    })
}

/// Distance from `x` to `span{cos(2πi/n), sin(2πi/n)}`, `i = 1..n`.
pub fn extremal_span_residual(x: &SampleVector) -> Result<f64> {
    let n = x.len();
    require_n(n)?;
    let c = SampleVector::from_fn(n, |i| lattice_angle(i, n).cos())?;
    let s = SampleVector::from_fn(n, |i| lattice_angle(i, n).sin())?;
    let half = n as f64 / 2.0;
    let a = x.dot(&c)? / half;
    let b = x.dot(&s)? / half;
    let rest = x.axpy(-a, &c)?.axpy(-b, &s)?;
    Ok(rest.norm())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundComparison {
    pub n: usize,
    /// `cos(2π/n)`.
    pub lhs: f64,
    /// `(3n² - 4π²) / (3n² + 2π²)`.
    pub rhs: f64,
    /// `rhs - lhs`.
    pub margin: f64,
}

/// Compares the sharp bound with the piecewise bound.
///
/// Both bounds approach 1 and their difference is `~α⁴/24` with `α = 2π/n`,
/// so the margin is formed from the two distances to 1,
/// `1 - cos α = 2 sin²(α/2)` and `1 - rhs = 3α² / (6 + α²)`, which are
/// computed without cancellation.
pub fn bound_comparison(n: usize) -> Result<BoundComparison> {
    let lhs = discrete_bound(n)?;
    let rhs = piecewise_bound(n)?;
    let alpha = TAU / n as f64;
    let half_sin = (alpha / 2.0).sin();
    let lhs_gap = 2.0 * half_sin * half_sin;
    let a2 = alpha * alpha;
    let rhs_gap = 3.0 * a2 / (6.0 + a2);
    Ok(BoundComparison {
        n,
        lhs,
        rhs,
        margin: lhs_gap - rhs_gap,
    })
}

/// `(2π/n)⁴ / 30`, the quartic Taylor floor for the bound margin.
pub fn taylor_margin_floor(n: usize) -> f64 {
    (TAU / n as f64).powi(4) / 30.0
}

/// A uniformly distributed point of `{Σx = 0, ‖X‖ = 1}`: standard normal
/// entries, centered and normalized, redrawn on a degenerate draw.
pub fn random_conforming<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SampleVector> {
    require_n(n)?;
    loop {
        let raw = SampleVector::from_fn(n, |_| rng.sample::<f64, _>(StandardNormal))?;
        match raw.center_normalize() {
            Ok(x) => return Ok(x),
            Err(Error::DegenerateVector) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Maximum `|cyclic_correlation - canonical_form|` relative error over
/// `samples` random vectors, a convenience for the verification CLI.
pub fn canonical_form_residual<R: Rng + ?Sized>(
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let basis = crate::spectral::CyclicBasis::new(n)?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let x = SampleVector::from_fn(n, |_| rng.sample::<f64, _>(StandardNormal))?;
        let direct = x.cyclic_correlation();
        let canon = crate::spectral::canonical_form(&basis.coordinates(&x)?, n)?;
        worst = worst.max((direct - canon).abs() / x.norm_sq());
    }
    Ok(worst)
}
