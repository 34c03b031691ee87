//! Stokes as a Douglis–Nirenberg system: ring determinant, cofactor identity
//! and a periodic solve by two routes.
//!
//! ```bash
//! cargo run --release --example stokes_system
//! ```

use std::f64::consts::PI;

use elliptica::multiplier::{solve_system_checked, BatterySpec, GridSpec, VectorGridField};
use elliptica::symbol::{DNSystem, ScalarOperator};
use elliptica::Complex64;

fn main() -> elliptica::Result<()> {
    for dim in [2, 3] {
        let sys = DNSystem::stokes(dim);
        let det = sys.det()?;
        let sign = if dim % 2 == 0 { 1.0 } else { -1.0 };
        let target = ScalarOperator::laplacian_power(dim, dim).scale(Complex64::new(sign, 0.0));
        let cof = sys.verify_cofactor_identity()?;
        println!(
            "N={dim}: det order {:?}, |det - (-1)^N Δ^N| = {:.1e}, cofactor residual {:.1e}",
            det.order(),
            det.max_coeff_diff(&target),
            cof.relative_residual
        );
    }

    let sys = DNSystem::stokes(2);
    let spec = GridSpec::new(2, 64, 2.0 * PI)?;
    let battery = BatterySpec { count: sys.n(), seed: 5, band: 16 };
    let f = VectorGridField::new(battery.fields(&spec)?)?;
    let (_, report) = solve_system_checked(&sys, &f)?;
    println!("\n64x64 solve: residual {:.2e}, direct vs cofactor route {:.2e}", report.residual, report.cofactor_agreement);
    Ok(())
}
