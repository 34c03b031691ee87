//! Verification toolkit for homogeneous constant-coefficient elliptic
//! operators `A = i^m Σ_{|α|₁=m} a_α ∂^α` on `ℝ^N` and Douglis–Nirenberg
//! systems built from them.
//!
//! - [`symbol`]: operators, symbols, certified ellipticity, ring
//!   determinants and cofactors of DN systems.
//! - [`poly`]: operators acting on graded polynomial spaces, A-harmonic
//!   kernels and polynomial preimages.
//! - [`growth`]: ball norms, `M^{s,q}` norms on radius ladders, fitted
//!   growth exponents and inequality checks.
//! - [`multiplier`]: Fourier-multiplier solves on the torus,
//!   Calderón–Zygmund ratios and the finite-part fundamental-solution
//!   pairing.
//! - [`kelvin`]: Kelvin transform and the exterior Dirichlet pipeline.
//! - [`suite`]: named verification suites with CSV/JSON reports.

pub mod error;
pub mod growth;
pub mod kelvin;
pub mod linalg;
pub mod multiplier;
pub mod poly;
pub mod quadrature;
pub mod suite;
pub mod symbol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
