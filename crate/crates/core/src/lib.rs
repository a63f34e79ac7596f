//! Non-reciprocal two-site tunneling model.
//!
//! The crate builds the non-Hermitian Hamiltonian of two energy-degenerate
//! sites coupled with unequal forward/backward strengths, diagonalizes it in
//! a biorthogonal basis, evolves kets and bras in closed form, renormalizes
//! the resulting transition probabilities and drives a population-level rate
//! equation with them. A scaling-and-squaring matrix exponential provides an
//! independent numeric route for every closed-form quantity.
//!
//! Time is in units where ħ = 1; figure-style data is parameterized by the
//! dimensionless time `τ = |g| t` and the asymmetry ratio `β`.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod model;
pub mod semiclassical;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use model::{BasisLabel, ModelParams, Site};
pub use num_complex::Complex64;
