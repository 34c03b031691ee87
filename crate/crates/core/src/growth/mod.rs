//! Growth spaces `M^{s,q}`, `M_0^{s,q}` and `L_s^q` estimated on geometric
//! radius ladders.

pub mod checks;
pub mod field;
pub mod ladder;
pub mod norms;
pub mod profile;

pub use checks::{
    check_embedding_sandwich, check_integration, check_product, IntegrationCheck, ProductCheck,
    SandwichCheck,
};
pub use field::AnalyticField;
pub use ladder::RadiusLadder;
pub use norms::{
    annulus_norm, ball_norm, ladder_norms, m_norm, normalize, weighted_norm, weighted_norm_ladder,
    QuadratureSpec,
};
pub use profile::{classify, classify_region, fitted_exponent, GrowthProfile, TailTrend, DEFAULT_TOL};
