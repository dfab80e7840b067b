//! Sample vectors, the cyclic shift and the cyclic correlation form.
//!
//! A [`SampleVector`] of length `n` holds the values `x_1..x_n` of a function at
//! the equispaced points `t_j = 2πj/n`. Storage is 0-based: `values()[j - 1]`
//! is `x_j`. Every cyclic reference to `x_0` resolves to `x_n`.

use crate::error::{Error, Result};
use crate::sum::{self, CompensatedSum};

#[derive(Debug, Clone, PartialEq)]
pub struct SampleVector {
    values: Vec<f64>,
}

/// Mean and squared norm of a vector, i.e. the two quantities constrained by
/// the normalized problem (`Σx = 0`, `Σx² = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintStatus {
    pub mean: f64,
    pub norm_sq: f64,
}

impl ConstraintStatus {
    pub fn is_conforming(&self, tol: f64) -> bool {
        self.mean.abs() <= tol && (self.norm_sq - 1.0).abs() <= tol
    }
}

impl SampleVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSize {
                n: 0,
                reason: "sample vector must be non-empty",
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!(
                "sample {} is {}",
                pos + 1,
                values[pos]
            )));
        }
        Ok(Self { values })
    }

    /// Builds `x_j = f(j)` for `j = 1..=n`.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        Self::new((1..=n).map(f).collect())
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `x_j` with cyclic 1-based indexing, so `x(0) == x(n)`.
    pub fn x(&self, j: i64) -> f64 {
        let n = self.len() as i64;
        let idx = (j - 1).rem_euclid(n) as usize;
        self.values[idx]
    }

    /// The cyclic shift `T(x_1, .., x_n) = (x_n, x_1, .., x_{n-1})`.
    pub fn shift(&self) -> SampleVector {
        let n = self.len();
        let mut out = Vec::with_capacity(n);
        out.push(self.values[n - 1]);
        out.extend_from_slice(&self.values[..n - 1]);
        SampleVector { values: out }
    }

    pub fn dot(&self, other: &SampleVector) -> Result<f64> {
        self.check_len(other)?;
        Ok(sum::dot(&self.values, &other.values))
    }

    pub fn norm_sq(&self) -> f64 {
        sum::norm_sq(&self.values)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn mean(&self) -> f64 {
        sum::sum(self.values.iter().copied()) / self.len() as f64
    }

    /// `Σ_j x_j x_{j-1}` with `x_0 = x_n`, i.e. `⟨X, T(X)⟩`.
    pub fn cyclic_correlation(&self) -> f64 {
        let n = self.len();
        let mut acc = CompensatedSum::new();
        acc.add_product(self.values[0], self.values[n - 1]);
        for j in 1..n {
            acc.add_product(self.values[j], self.values[j - 1]);
        }
        acc.value()
    }

    pub fn constraint_status(&self) -> ConstraintStatus {
        ConstraintStatus {
            mean: self.mean(),
            norm_sq: self.norm_sq(),
        }
    }

    /// Removes the mean and rescales to unit Euclidean norm.
    ///
    /// Fails with [`Error::DegenerateVector`] when the centered vector is zero
    /// or indistinguishable from rounding noise (a constant input).
    pub fn center_normalize(&self) -> Result<SampleVector> {
        let centered = self.centered();
        let norm = centered.norm();
        let scale = self.max_abs();
        let noise_floor = 4.0 * f64::EPSILON * scale * (self.len() as f64).sqrt();
        if norm < 1e-300 || norm <= noise_floor {
            return Err(Error::DegenerateVector);
        }
        Ok(centered.scaled(1.0 / norm))
    }

    /// `x_j - m` where `m` is the sample mean.
    pub fn centered(&self) -> SampleVector {
        let m = self.mean();
        SampleVector {
            values: self.values.iter().map(|x| x - m).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> SampleVector {
        SampleVector {
            values: self.values.iter().map(|x| x * factor).collect(),
        }
    }

    /// `self + factor * other`.
    pub fn axpy(&self, factor: f64, other: &SampleVector) -> Result<SampleVector> {
        self.check_len(other)?;
        Ok(SampleVector {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| factor.mul_add(*y, *x))
                .collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Euclidean distance `‖self - other‖`.
    pub fn distance(&self, other: &SampleVector) -> Result<f64> {
        Ok(self.axpy(-1.0, other)?.norm())
    }

    pub(crate) fn check_len(&self, other: &SampleVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for SampleVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        SampleVector::new(values)
    }
}
