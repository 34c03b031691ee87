//! Certified ellipticity margins for the built-in operators.
//!
//! ```bash
//! cargo run --example ellipticity
//! ```

use elliptica::symbol::io::builtin_operator;
use elliptica::symbol::{check_ellipticity, resolvent_cone};

fn main() -> elliptica::Result<()> {
    let cases = [("laplacian", 3), ("bilaplacian", 3), ("cauchy_riemann", 2), ("cauchy_riemann_squared", 2), ("d1", 2)];
    println!("{:<24} {:>2} {:>12} {:>9} {:>9}", "operator", "N", "margin", "elliptic", "certified");
    for (name, dim) in cases {
        let op = builtin_operator(name, dim)?;
        let rep = check_ellipticity(&op, 256)?;
        println!("{name:<24} {dim:>2} {:>12.6e} {:>9} {:>9}", rep.margin, rep.elliptic, rep.certified);
    }

    // Where the symbol of the Cauchy-Riemann operator lands in the plane.
    let cone = resolvent_cone(&builtin_operator("cauchy_riemann", 2)?, 256)?;
    println!("\ncauchy_riemann: largest argument gap {:.4}, spectral shift exists: {}", cone.largest_gap, cone.exists_spectral_shift);
    Ok(())
}
