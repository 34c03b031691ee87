//! Spectral solves on the periodic torus and Calderón–Zygmund ratios.
//!
//! ```bash
//! cargo run --release --example torus_solver
//! ```

use std::f64::consts::PI;

use elliptica::multiplier::{cz_ratio, cz_survey, solve_scalar, spectral_apply, BatterySpec, GridField, GridSpec};
use elliptica::symbol::io::builtin_operator;
use elliptica::Complex64;

fn main() -> elliptica::Result<()> {
    let spec = GridSpec::new(2, 64, 2.0 * PI)?;
    let op = builtin_operator("laplacian", 2)?;

    let f = GridField::from_fn(spec, |x| Complex64::new((3.0 * x[0]).sin() * x[1].cos(), 0.0));
    let u = solve_scalar(&op, &f)?;
    let back = spectral_apply(&op, &u)?;
    println!("round trip error {:.3e}", back.relative_diff(&f));
    println!("|u| max {:.6} (exact 1/10)", u.max_abs());

    for name in ["laplacian", "bilaplacian", "cauchy_riemann"] {
        let op = builtin_operator(name, 2)?;
        println!("{name:<16} L2 ratio {:.12}", cz_ratio(&op, &f, 2.0, 0)?);
    }

    let battery = BatterySpec::for_grid(32, 11);
    for row in cz_survey(&op, &[1.5, 2.0, 4.0], &battery, &spec, 0)? {
        println!("p={:<4} fields={} max {:.4} median {:.4}", row.p, row.fields, row.max, row.median);
    }
    Ok(())
}
