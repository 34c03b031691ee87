//! Operators as linear maps between graded polynomial spaces: A-harmonic
//! kernels, preimages and surjectivity.

pub mod action;
pub mod polynomial;

pub use action::{
    dim_p, harmonic_space, nu, operator_matrix, poly_apply, poly_preimage, surjectivity_check,
    HarmonicSpace, PolyMap, SurjectivityReport,
};
pub use polynomial::Polynomial;
