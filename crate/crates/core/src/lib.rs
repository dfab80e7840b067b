//! Numerical machinery for the discrete Wirtinger inequality.
//!
//! * [`sample`]: sample vectors, the cyclic shift `T` and `⟨X, T X⟩`.
//! * [`spectral`]: the explicit orthonormal basis that block-diagonalizes `T`.
//! * [`inequality`]: the sharp bound `cos(2π/n)`, its extremizers, the
//!   piecewise-linear bound and a dense eigen-oracle.
//! * [`pwl`]: piecewise-linear interpolants and their exact energies.
//! * [`analysis`]: sampling of periodic functions, convergence sweeps, tail
//!   energies and Fourier coefficient recovery.
//! * [`cli`]: the `wirtinger` command-line front end.

pub mod analysis;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod functions;
pub mod inequality;
pub mod pwl;
pub mod quadrature;
pub mod sample;
pub mod spectral;
pub mod sum;

pub use error::{Error, Result};
pub use sample::{ConstraintStatus, SampleVector};
