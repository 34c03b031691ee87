//! Kelvin transform `h^K(y) = |y|^{2−N} h(y/|y|²)` and the exterior
//! Dirichlet solver for `Ω = {|x| > 1}`, `N ≥ 3`.

pub mod ball;
pub mod exterior;
pub mod transform;

pub use ball::{observed_orders, solve_ball_dirichlet, BallSolution, NodeKind, SorOptions, SourceFill};
pub use exterior::{exterior_oracle, exterior_solve, ExteriorSolution};
pub use transform::{
    invert_point, kelvin_transform, transform_data, BoundaryData, ExteriorDomain, TransformedData, WeightCheck,
};
