//! Symbol calculus for homogeneous scalar operators and Douglis–Nirenberg
//! systems.

pub mod dn;
pub mod ellipticity;
pub mod io;
pub mod multi_index;
pub mod operator;

pub use dn::{CofactorResidual, DNSystem, Violation};
pub use ellipticity::{check_ellipticity, resolvent_cone, EllipticityReport, ResolventCone};
pub use multi_index::MultiIndex;
pub use operator::ScalarOperator;
