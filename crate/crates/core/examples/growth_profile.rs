//! Growth profiles of catalog fields on a geometric ladder of radii.
//!
//! ```bash
//! cargo run --release --example growth_profile
//! ```

use elliptica::growth::{check_integration, classify, AnalyticField, QuadratureSpec, RadiusLadder, DEFAULT_TOL};

fn main() -> elliptica::Result<()> {
    let dim = 3;
    let ladder = RadiusLadder::default();
    let quad = QuadratureSpec::for_dim(dim);

    println!("{:<24} {:>4} {:>10} {:>8} {:>6} {:>6}", "field", "q", "fitted", "stderr", "in M", "in M0");
    for spec in ["const", "power:-1", "power:0.5", "monomial:2,1,0", "log", "oscillatory:2"] {
        let u = AnalyticField::from_catalog(spec, dim)?;
        for q in [1.0, 2.0, f64::INFINITY] {
            let p = classify(&u, q, 0.0, &ladder, &quad, DEFAULT_TOL)?;
            println!(
                "{spec:<24} {q:>4} {:>10.4} {:>8.1e} {:>6} {:>6}",
                p.fitted_exponent, p.std_error, p.consistent_m, p.consistent_m0
            );
        }
    }

    // Integrating a gradient bound raises the exponent by one.
    let u = AnalyticField::one_plus_r_power(dim, 0.5);
    let check = check_integration(&u, -0.5, 2.0, 0.5, &ladder, &quad, DEFAULT_TOL)?;
    println!(
        "\n(1+|x|)^(1/2): inequality at every rung {} (min margin {:.3e}), exponents u {:.3} grad {:.3}",
        check.inequality_holds, check.min_margin, check.exponent_u, check.exponent_grad
    );
    Ok(())
}
