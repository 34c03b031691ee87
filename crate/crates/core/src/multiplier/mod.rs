//! Fourier-multiplier solvers on the torus `[0, L)^N`, Calderón–Zygmund
//! ratio surveys and the finite-part fundamental-solution pairing.

pub mod cz;
pub mod finite_part;
pub mod grid;
pub mod solve;

pub use cz::{cz_ratio, cz_survey, gradient_norm, BatterySpec, CzRow};
pub use finite_part::{
    degree_zero_integral, finite_part_pairing, harmonic_number, FiniteDifferenceTest, FinitePartQuadrature,
    FinitePartResult, PairingBranch, PolyGaussian, RadialTestFunction,
};
pub use grid::{fft_nd, GridField, GridSpec, VectorGridField};
pub use solve::{
    apply_system, derivative_field, max_multiplier_magnitude, solve_scalar, solve_system, solve_system_checked,
    solve_system_cofactor, spectral_apply, spectral_derivative, SystemSolveReport,
};
