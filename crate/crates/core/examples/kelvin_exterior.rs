//! Exterior Dirichlet problem on `|x| > 1` in three dimensions, solved on the
//! unit ball after a Kelvin transform.
//!
//! ```bash
//! cargo run --release --example kelvin_exterior
//! ```

use elliptica::growth::QuadratureSpec;
use elliptica::kelvin::{exterior_solve, BoundaryData};

fn main() -> elliptica::Result<()> {
    let quad = QuadratureSpec::for_dim(3);
    let data = BoundaryData::parse(3, "const:1", "zero", 2.0)?;
    for res in [17, 33, 65] {
        let sol = exterior_solve(&data, res, &quad)?;
        let err = sol.max_relative_error(|x| (1.0 / x.iter().map(|v| v * v).sum::<f64>().sqrt()).into(), 1.25, 4.0, 12);
        println!(
            "res {res:>3}: sweeps {:>5}, error vs 1/|x| {err:.2e}, decay exponent {:.4}, certified {}",
            sol.ball.diagnostics.sweeps, sol.profile.fitted_exponent, sol.decay_certified
        );
    }

    let forced = BoundaryData::parse(3, "const:0", "power:-8", 2.0)?;
    let sol = exterior_solve(&forced, 33, &quad)?;
    println!("\nsource |x|^-8: u(2,0,0) = {:.6}, decay exponent {:.4}", sol.field.eval(&[2.0, 0.0, 0.0]).re, sol.profile.fitted_exponent);
    Ok(())
}
