//! Bivariate Lagrange interpolation on Lissajous–Chebyshev nodes, ℓ1 (rhombus)
//! Fourier partial sums, and the Lebesgue constants attached to both.
//!
//! The crate is organised bottom-up:
//!
//! * [`chebyshev`] – Chebyshev–Gauss–Lobatto points and the normalized basis `C_n`.
//! * [`lcnodes`] – Lissajous curves, node sets `LC_mn`, index sets and weights.
//! * [`interp`] – fundamental polynomials, the interpolation operator and its
//!   Lebesgue function/constant.
//! * [`kernels`] – every trigonometric kernel used by the decomposition
//!   `D_mn = S_mn − F_mn + R_mn`, with removable singularities handled.
//! * [`norms`] – L¹ norms by composite Gauss–Legendre quadrature, discrete
//!   Lebesgue functions and grid searches for suprema.
//! * [`asympt`] – main terms, remainder scales and residual sweeps.
//!
//! All logarithms are natural logarithms.

pub mod asympt;
pub mod chebyshev;
mod error;
pub mod interp;
pub mod kernels;
pub mod lcnodes;
pub mod norms;
pub mod report;

pub use error::{Error, Result};
