//! The orthonormal basis adapted to the cyclic shift.
//!
//! `T` acts on `R^n` as an isometry whose real canonical form consists of the
//! fixed direction `(1, .., 1)`, the flipped alternating direction when `n` is
//! even, and `⌊(n-1)/2⌋` planes `H_k` on which it rotates by `α_k = 2πk/n`.
//! [`CyclicBasis::new`] writes those vectors down explicitly:
//!
//! ```text
//! e_1       = (1, .., 1) / √n
//! e_2       = (1, -1, .., 1, -1) / √n                       (n even only)
//! cos block = √(2/n) (1, cos α_k, cos 2α_k, .., cos (n-1)α_k)
//! sin block = √(2/n) (0, sin α_k, sin 2α_k, .., sin (n-1)α_k)
//! ```
//!
//! For `n` even the cosine/sine pair of block `k` sits at `e_{2k+1}, e_{2k+2}`;
//! for `n` odd at `e_{2k}, e_{2k+1}`. Indices in this module are 0-based, so
//! `vector(i)` is `e_{i+1}`.
//!
//! Blocks are addressed by their frequency `k`: `k = 0` is the constant
//! direction, `1 <= k < n/2` are the rotation planes and, for even `n`,
//! `k = n/2` is the alternating direction (eigenvalue `-1 = cos α_{n/2}`).

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::sample::SampleVector;
use crate::sum::{self, CompensatedSum};

/// Angle `2π·(m mod n)/n`, reduced before the trig call.
pub(crate) fn lattice_angle(m: usize, n: usize) -> f64 {
    TAU * ((m % n) as f64) / n as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Block {
    /// A basis vector fixed (`+1`) or flipped (`-1`) by the shift.
    Fixed { index: usize, eigenvalue: f64 },
    /// A plane spanned by a cosine and a sine vector, rotated by `angle`.
    Rotation {
        cos_index: usize,
        sin_index: usize,
        k: usize,
        angle: f64,
    },
}

impl Block {
    pub fn indices(&self) -> Vec<usize> {
        match *self {
            Block::Fixed { index, .. } => vec![index],
            Block::Rotation {
                cos_index,
                sin_index,
                ..
            } => vec![cos_index, sin_index],
        }
    }

    /// The value `⟨e, T e⟩` shared by every unit vector of the block.
    pub fn correlation(&self) -> f64 {
        match *self {
            Block::Fixed { eigenvalue, .. } => eigenvalue,
            Block::Rotation { angle, .. } => angle.cos(),
        }
    }
}

/// Which way the shift turned a rotation plane when checked against the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `T(c) = cos α c + sin α s`.
    Positive,
    /// `T(c) = cos α c - sin α s`.
    Negative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActionCheck {
    /// Largest `‖T(e_i) - predicted image‖` over all basis vectors.
    pub residual: f64,
    /// Orientation observed for each rotation block, keyed by frequency `k`.
    pub orientations: Vec<(usize, Orientation)>,
}

/// Coordinates `y_i = ⟨X, e_i⟩` of a vector in a [`CyclicBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateVector {
    pub y: Vec<f64>,
}

impl CoordinateVector {
    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        sum::norm_sq(&self.y)
    }
}

#[derive(Debug, Clone)]
pub struct CyclicBasis {
    n: usize,
    vectors: Vec<SampleVector>,
    blocks: Vec<Block>,
}

impl CyclicBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidSize {
                n,
                reason: "cyclic basis requires n >= 4",
            });
        }
        let inv_sqrt_n = 1.0 / (n as f64).sqrt();
        let amp = (2.0 / n as f64).sqrt();

        let mut vectors = Vec::with_capacity(n);
        let mut blocks = Vec::with_capacity(n / 2 + 1);

        vectors.push(SampleVector::new(vec![inv_sqrt_n; n])?);
        blocks.push(Block::Fixed {
            index: 0,
            eigenvalue: 1.0,
        });

        if n.is_multiple_of(2) {
            let alt = (0..n)
                .map(|i| if i % 2 == 0 { inv_sqrt_n } else { -inv_sqrt_n })
                .collect();
            vectors.push(SampleVector::new(alt)?);
            blocks.push(Block::Fixed {
                index: 1,
                eigenvalue: -1.0,
            });
        }

        for k in 1..=(n - 1) / 2 {
            let cos_index = vectors.len();
            let cos_vec = (0..n)
                .map(|i| amp * lattice_angle(i * k, n).cos())
                .collect();
            let sin_vec = (0..n)
                .map(|i| amp * lattice_angle(i * k, n).sin())
                .collect();
            vectors.push(SampleVector::new(cos_vec)?);
            vectors.push(SampleVector::new(sin_vec)?);
            blocks.push(Block::Rotation {
                cos_index,
                sin_index: cos_index + 1,
                k,
                angle: lattice_angle(k, n),
            });
        }
        debug_assert_eq!(vectors.len(), n);

        Ok(Self { n, vectors, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[SampleVector] {
        &self.vectors
    }

    /// `e_{i+1}`.
    pub fn vector(&self, i: usize) -> &SampleVector {
        &self.vectors[i]
    }

    /// Blocks in their canonical listing: fixed directions first, then the
    /// rotation planes by increasing `k`.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Largest block frequency: `⌊n/2⌋`.
    pub fn max_frequency(&self) -> usize {
        self.n / 2
    }

    /// The block of frequency `k`.
    pub fn block(&self, k: usize) -> Result<&Block> {
        let max = self.max_frequency();
        if k > max {
            return Err(Error::BlockOutOfRange { k, max });
        }
        let even = self.n.is_multiple_of(2);
        let pos = match (k, even) {
            (0, _) => 0,
            (k, true) if k == max => 1,
            (k, true) => k + 1,
            (k, false) => k,
        };
        Ok(&self.blocks[pos])
    }

    /// `max_{i,j} |⟨e_i, e_j⟩ - δ_ij|`.
    pub fn gram_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            let ei = self.vectors[i].values();
            for j in i..self.n {
                let g = sum::dot_fast(ei, self.vectors[j].values());
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    /// Checks that the shift maps every basis vector as the block structure
    /// prescribes. Each rotation block may match either orientation; the one
    /// with the smaller residual is recorded.
    pub fn verify_action(&self) -> ActionCheck {
        let mut residual = 0.0f64;
        let mut orientations = Vec::new();
        for block in &self.blocks {
            match *block {
                Block::Fixed { index, eigenvalue } => {
                    let e = &self.vectors[index];
                    let r = e.shift().distance(&e.scaled(eigenvalue)).unwrap();
                    residual = residual.max(r);
                }
                Block::Rotation {
                    cos_index,
                    sin_index,
                    k,
                    angle,
                } => {
                    let c = &self.vectors[cos_index];
                    let s = &self.vectors[sin_index];
                    let tc = c.shift();
                    let ts = s.shift();
                    let fit = |sign: f64| {
                        let (ca, sa) = (angle.cos(), sign * angle.sin());
                        let pc = c.scaled(ca).axpy(sa, s).unwrap();
                        let ps = c.scaled(-sa).axpy(ca, s).unwrap();
                        tc.distance(&pc).unwrap().max(ts.distance(&ps).unwrap())
                    };
                    let (pos, neg) = (fit(1.0), fit(-1.0));
                    if pos <= neg {
                        orientations.push((k, Orientation::Positive));
                        residual = residual.max(pos);
                    } else {
                        orientations.push((k, Orientation::Negative));
                        residual = residual.max(neg);
                    }
                }
            }
        }
        ActionCheck {
            residual,
            orientations,
        }
    }

    pub fn coordinates(&self, x: &SampleVector) -> Result<CoordinateVector> {
        self.check_dim(x)?;
        let y = self
            .vectors
            .iter()
            .map(|e| sum::dot(x.values(), e.values()))
            .collect();
        Ok(CoordinateVector { y })
    }

    /// `Σ y_i e_i`.
    pub fn reconstruct(&self, y: &CoordinateVector) -> Result<SampleVector> {
        if y.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: y.len(),
            });
        }
        let values = (0..self.n)
            .map(|slot| {
                let mut acc = CompensatedSum::new();
                for (yi, e) in y.y.iter().zip(&self.vectors) {
                    acc.add_product(*yi, e.values()[slot]);
                }
                acc.value()
            })
            .collect();
        SampleVector::new(values)
    }

    /// `‖P_k X‖²`, the squared norm of the orthogonal projection of `X` onto
    /// the block of frequency `k`.
    pub fn project(&self, x: &SampleVector, k: usize) -> Result<f64> {
        self.check_dim(x)?;
        let block = self.block(k)?;
        Ok(sum::sum(block.indices().into_iter().map(|i| {
            let yi = sum::dot(x.values(), self.vectors[i].values());
            yi * yi
        })))
    }

    /// The component `P_k X` itself.
    pub fn project_vector(&self, x: &SampleVector, k: usize) -> Result<SampleVector> {
        self.check_dim(x)?;
        let block = self.block(k)?;
        let mut out = SampleVector::zeros(self.n)?;
        for i in block.indices() {
            let e = &self.vectors[i];
            let yi = sum::dot(x.values(), e.values());
            out = out.axpy(yi, e)?;
        }
        Ok(out)
    }

    /// `‖P_k X‖²` for every `k = 0..=⌊n/2⌋`.
    pub fn block_energies(&self, x: &SampleVector) -> Result<Vec<f64>> {
        let y = self.coordinates(x)?;
        (0..=self.max_frequency())
            .map(|k| {
                let block = self.block(k)?;
                Ok(sum::sum(
                    block.indices().into_iter().map(|i| y.y[i] * y.y[i]),
                ))
            })
            .collect()
    }

    fn check_dim(&self, x: &SampleVector) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok(())
    }
}

/// The diagonal expression of `⟨X, T X⟩` in basis coordinates.
///
/// Even `n`: `y_1² - y_2² + Σ_k (y_{2k+1}² + y_{2k+2}²) cos α_k`.
/// Odd `n`: `y_1² + Σ_k (y_{2k}² + y_{2k+1}²) cos α_k`.
pub fn canonical_form(y: &CoordinateVector, n: usize) -> Result<f64> {
    if n < 4 {
        return Err(Error::InvalidSize {
            n,
            reason: "canonical form requires n >= 4",
        });
    }
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: y.len(),
        });
    }
    let y = &y.y;
    let mut acc = CompensatedSum::new();
    acc.add_product(y[0], y[0]);
    let first_pair = if n.is_multiple_of(2) {
        acc.add_product(-y[1], y[1]);
        2
    } else {
        1
    };
    for k in 1..=(n - 1) / 2 {
        let i = first_pair + 2 * (k - 1);
        let c = lattice_angle(k, n).cos();
        acc.add_product(c * y[i], y[i]);
        acc.add_product(c * y[i + 1], y[i + 1]);
    }
    Ok(acc.value())
}
