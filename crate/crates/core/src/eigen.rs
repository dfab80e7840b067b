//! Dense symmetric eigensolver by cyclic Jacobi rotations.
//!
//! Knows nothing about the cyclic basis; it is the independent side of the
//! cross-checks on the shift spectrum.

use crate::error::{Error, Result};

/// Square matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// `(A + Aᵀ) / 2`.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.n, |i, j| 0.5 * (self.get(i, j) + self.get(j, i)))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let v = self.get(i, j);
                    acc += v * v;
                }
            }
        }
        acc.sqrt()
    }
}

/// Eigenvalues with their unit eigenvectors; `vectors[i]` belongs to `values[i]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

impl SymmetricEigen {
    /// Index of the largest eigenvalue.
    pub fn argmax(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }

    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Diagonalizes a symmetric matrix. Stops once the off-diagonal Frobenius norm
/// is at most `tol` times the Frobenius norm of the input.
pub fn jacobi_eigen(matrix: &DenseMatrix, tol: f64, max_sweeps: usize) -> Result<SymmetricEigen> {
    let n = matrix.n;
    let mut a = matrix.clone();
    let mut v = DenseMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 });
    let scale = matrix.frobenius_norm();

    let mut sweeps = 0;
    let mut residual = a.off_diagonal_norm();
    while residual > tol * scale {
        if sweeps == max_sweeps {
            return Err(Error::ConvergenceFailure { sweeps, residual });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                // Rutishauser's formulation: t = tan θ for the smaller rotation.
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s, t * apq);
            }
        }
        residual = a.off_diagonal_norm();
    }

    let values = (0..n).map(|i| a.get(i, i)).collect();
    let vectors = (0..n)
        .map(|j| (0..n).map(|i| v.get(i, j)).collect())
        .collect();
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Applies the rotation in the (p, q) plane that annihilates `a[p][q]`.
fn rotate(
    a: &mut DenseMatrix,
    v: &mut DenseMatrix,
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    shift: f64,
) {
    let n = a.n;
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    a.set(p, p, app - shift);
    a.set(q, q, aqq + shift);
    a.set(p, q, 0.0);
    a.set(q, p, 0.0);
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a.get(r, p);
        let arq = a.get(r, q);
        let new_p = c * arp - s * arq;
        let new_q = s * arp + c * arq;
        a.set(r, p, new_p);
        a.set(p, r, new_p);
        a.set(r, q, new_q);
        a.set(q, r, new_q);
    }
    for r in 0..n {
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, c * vrp - s * vrq);
        v.set(r, q, s * vrp + c * vrq);
    }
}
