//! The regularized fundamental-solution pairing: `⟨E, Aφ⟩ = ∫φ`.
//!
//! ```bash
//! cargo run --release --example finite_part
//! ```

use elliptica::multiplier::{finite_part_pairing, FinitePartQuadrature, PolyGaussian};
use elliptica::symbol::io::builtin_operator;

fn main() -> elliptica::Result<()> {
    for (name, dim) in [("laplacian", 2), ("bilaplacian", 2), ("laplacian", 3), ("bilaplacian", 3)] {
        let op = builtin_operator(name, dim)?;
        let phi = PolyGaussian::gaussian(dim, 0.8)?;
        let res = finite_part_pairing(&op, &phi.times_symbol(&op)?, &FinitePartQuadrature::for_dim(dim))?;
        let exact = phi.integral();
        println!(
            "{name:<12} N={dim} {:?}: pairing {:.12} exact {:.12} rel err {:.2e}",
            res.branch,
            res.value.re,
            exact.re,
            (res.value - exact).norm() / exact.norm()
        );
    }
    Ok(())
}
