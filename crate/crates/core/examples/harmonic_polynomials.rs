//! Kernel dimensions of operators on homogeneous polynomials, and
//! polynomial preimages.
//!
//! ```bash
//! cargo run --example harmonic_polynomials
//! ```

use elliptica::poly::{harmonic_space, poly_apply, poly_preimage, Polynomial};
use elliptica::symbol::io::builtin_operator;
use elliptica::Complex64;

fn main() -> elliptica::Result<()> {
    for (name, dim) in [("laplacian", 3), ("bilaplacian", 3), ("cauchy_riemann", 2)] {
        let op = builtin_operator(name, dim)?;
        let dims: Vec<String> = (0..=6)
            .map(|ell| harmonic_space(&op, ell).map(|h| format!("{}/{}", h.kernel_dim(), h.formula_dim)))
            .collect::<elliptica::Result<_>>()?;
        println!("{name:<16} N={dim}  kernel/formula for ell=0..6: {}", dims.join(" "));
    }

    // Solve -Δu = π for a random cubic π.
    let op = builtin_operator("laplacian", 3)?;
    let pi = Polynomial::random(3, 3, 7);
    let u = poly_preimage(&op, &pi, 5)?;
    let residual = poly_apply(&op, &u)?.add(&pi.scale(Complex64::new(-1.0, 0.0)))?.coeff_norm();
    println!("\npreimage of a random cubic: degree {} with residual {residual:.3e}", u.degree());
    Ok(())
}
