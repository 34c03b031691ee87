//! Numerical checks of the product estimate, the gradient-integration
//! inequality and the `L_s^q ↪ M^{s,q} ↪ L_t^q` sandwich.

use serde::Serialize;

use super::field::AnalyticField;
use super::ladder::RadiusLadder;
use super::norms::{ball_norm, m_norm, weighted_norm_ladder, QuadratureSpec};
use super::profile::{classify, fit_slope, tail_start};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub q3: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `‖uv‖_{M^{s1+s2,q3}} ≤ ‖u‖_{M^{s1,q1}}·‖v‖_{M^{s2,q2}}` with
/// `1/q3 = 1/q1 + 1/q2`.
#[allow(clippy::too_many_arguments)]
pub fn check_product(
    u: &AnalyticField,
    v: &AnalyticField,
    s1: f64,
    q1: f64,
    s2: f64,
    q2: f64,
    ladder: &RadiusLadder,
    quad: &QuadratureSpec,
    tol: f64,
) -> Result<ProductCheck> {
    let inv = 1.0 / q1 + 1.0 / q2;
    if inv > 1.0 + 1e-12 || q1 < 1.0 || q2 < 1.0 {
        return Err(Error::InvalidInput(format!("1/{q1} + 1/{q2} must not exceed 1")));
    }
    let q3 = if inv == 0.0 { f64::INFINITY } else { 1.0 / inv };
    let lhs = m_norm(&u.product(v), s1 + s2, q3, ladder, quad)?;
    let rhs = m_norm(u, s1, q1, ladder, quad)? * m_norm(v, s2, q2, ladder, quad)?;
    Ok(ProductCheck { q3, lhs, rhs, pass: lhs <= rhs * (1.0 + tol) })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegrationRung {
    pub radius: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegrationCheck {
    pub rungs: Vec<IntegrationRung>,
    /// Smallest `(rhs − lhs)/rhs` over the rungs.
    pub min_margin: f64,
    pub inequality_holds: bool,
    pub exponent_u: f64,
    pub exponent_grad: f64,
    pub exponent_relation_holds: bool,
}

/// Checks `‖u‖_{q,B_R} ≤ 2λ^{−N/q}‖u‖_{q,B_{λR}} + 2λ^{(1−N)/q} R ‖∇u‖_{q,B_R}`
/// on every rung and that the growth exponent of `u` exceeds that of
/// `|∇u|` by at most one.
#[allow(clippy::too_many_arguments)]
pub fn check_integration(
    u: &AnalyticField,
    s: f64,
    q: f64,
    lambda: f64,
    ladder: &RadiusLadder,
    quad: &QuadratureSpec,
    tol: f64,
) -> Result<IntegrationCheck> {
    if s <= -1.0 {
        return Err(Error::InvalidInput(format!("s = {s} must exceed -1")));
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidInput(format!("lambda = {lambda} must lie in (0, 1)")));
    }
    let grad = u
        .gradient_magnitude()
        .ok_or_else(|| Error::InvalidInput(format!("field '{}' has no gradient", u.label())))?;
    let n = u.dim() as f64;
    let c0 = 2.0 * lambda.powf(-n / q);
    let c1 = 2.0 * lambda.powf((1.0 - n) / q);
    let mut rungs = Vec::with_capacity(ladder.count);
    for r in ladder.radii() {
        let lhs = ball_norm(u, q, r, quad)?;
        let rhs = c0 * ball_norm(u, q, lambda * r, quad)? + c1 * r * ball_norm(&grad, q, r, quad)?;
        rungs.push(IntegrationRung { radius: r, lhs, rhs });
    }
    let min_margin = rungs
        .iter()
        .map(|g| if g.rhs > 0.0 { (g.rhs - g.lhs) / g.rhs } else if g.lhs == 0.0 { 1.0 } else { -1.0 })
        .fold(f64::INFINITY, f64::min);
    let exponent_u = classify(u, q, s, ladder, quad, tol)?.fitted_exponent;
    let exponent_grad = classify(&grad, q, s, ladder, quad, tol)?.fitted_exponent;
    let exponent_relation_holds = exponent_u <= exponent_grad.max(-1.0) + 1.0 + tol;
    Ok(IntegrationCheck {
        rungs,
        inequality_holds: min_margin >= 0.0,
        min_margin,
        exponent_u,
        exponent_grad,
        exponent_relation_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichCheck {
    pub weighted_s: Vec<f64>,
    pub weighted_s_finite: bool,
    pub m_norm_s: f64,
    pub m_bounded: bool,
    pub weighted_t: Vec<f64>,
    pub weighted_t_finite: bool,
    pub pass: bool,
}

/// Whether cumulative `q`-th power integrals on a ladder level off: the
/// per-shell increments must decay geometrically in `R`.
pub fn plateaus(cumulative: &[f64], radii: &[f64], q: f64, tol: f64) -> bool {
    let powers: Vec<f64> = cumulative.iter().map(|v| v.powf(q)).collect();
    let total = *powers.last().unwrap_or(&0.0);
    let start = tail_start(radii.len()).max(1);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for k in start..radii.len() {
        let inc = powers[k] - powers[k - 1];
        if inc > 1e-14 * total {
            xs.push(radii[k].ln());
            ys.push(inc.ln());
        }
    }
    if xs.len() < 2 {
        return true;
    }
    fit_slope(&xs, &ys).0 < -tol
}

/// Checks the implications `u ∈ L_s^q ⇒ u ∈ M^{s,q} ⇒ u ∈ L_t^q` on
/// ladder evidence.
#[allow(clippy::too_many_arguments)]
pub fn check_embedding_sandwich(
    u: &AnalyticField,
    s: f64,
    t: f64,
    q: f64,
    ladder: &RadiusLadder,
    quad: &QuadratureSpec,
    tol: f64,
) -> Result<SandwichCheck> {
    let n = u.dim() as f64;
    if !(t > s && s >= -n / q) {
        return Err(Error::InvalidInput(format!("need t > s ≥ -N/q, got s = {s}, t = {t}")));
    }
    if q.is_infinite() {
        return Err(Error::InvalidInput("sandwich check needs finite q".into()));
    }
    let radii = ladder.radii();
    let weighted_s = weighted_norm_ladder(u, s, q, ladder, quad)?;
    let weighted_t = weighted_norm_ladder(u, t, q, ladder, quad)?;
    let weighted_s_finite = plateaus(&weighted_s, &radii, q, tol);
    let weighted_t_finite = plateaus(&weighted_t, &radii, q, tol);
    let m_norm_s = m_norm(u, s, q, ladder, quad)?;
    let m_bounded = classify(u, q, s, ladder, quad, tol)?.consistent_m;
    let pass = (!weighted_s_finite || m_bounded) && (!m_bounded || weighted_t_finite);
    Ok(SandwichCheck { weighted_s, weighted_s_finite, m_norm_s, m_bounded, weighted_t, weighted_t_finite, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::DEFAULT_TOL;
    use crate::Complex64;

    fn setup(dim: usize) -> (RadiusLadder, QuadratureSpec) {
        (RadiusLadder::default(), QuadratureSpec::for_dim(dim))
    }

    #[test]
    fn product_of_constants() {
        let (l, q) = setup(2);
        let one = AnalyticField::constant(2, 1.0);
        let c = check_product(&one, &one, 0.0, 2.0, 0.0, 2.0, &l, &q, 1e-9).unwrap();
        assert!(c.pass);
        assert!((c.q3 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn product_exponent_constraint() {
        let (l, q) = setup(2);
        let one = AnalyticField::constant(2, 1.0);
        assert!(check_product(&one, &one, 0.0, 1.5, 0.0, 1.5, &l, &q, 1e-9).is_err());
    }

    #[test]
    fn product_of_powers_near_equality() {
        let (l, q) = setup(2);
        let (a, b) = (0.5, 1.0);
        let u = AnalyticField::power(2, a);
        let v = AnalyticField::power(2, b);
        let c = check_product(&u, &v, a, 2.0, b, 2.0, &l, &q, 1e-9).unwrap();
        assert!(c.pass);
        assert!(c.lhs / c.rhs > 0.9);
    }

    #[test]
    fn integration_inequality_for_smoothed_square() {
        let (l, q) = setup(2);
        let u = AnalyticField::smoothed_power(2, 2.0, 0.5);
        let c = check_integration(&u, 1.0, 2.0, 0.5, &l, &q, DEFAULT_TOL).unwrap();
        assert!(c.inequality_holds && c.min_margin > 0.0);
        assert!(c.exponent_relation_holds);
    }

    #[test]
    fn integration_for_constant_and_coordinate() {
        let (l, q) = setup(2);
        let c = check_integration(&AnalyticField::constant(2, 1.0), 0.0, 2.0, 0.5, &l, &q, DEFAULT_TOL).unwrap();
        assert!(c.inequality_holds && c.exponent_relation_holds);
        let x1 = AnalyticField::coordinate(2, 0);
        let c = check_integration(&x1, 0.0, 2.0, 0.5, &l, &q, DEFAULT_TOL).unwrap();
        assert!((c.exponent_u - 1.0).abs() < 0.05 && c.exponent_grad.abs() < 0.05);
        assert!(c.exponent_relation_holds);
    }

    #[test]
    fn integration_needs_gradient() {
        let (l, q) = setup(2);
        let u = AnalyticField::new(2, "bare", |_| Complex64::new(1.0, 0.0));
        assert!(check_integration(&u, 0.0, 2.0, 0.5, &l, &q, DEFAULT_TOL).is_err());
    }

    #[test]
    fn sandwich_cases() {
        let (l, q) = setup(2);
        let u = AnalyticField::power(2, 0.5);
        let c = check_embedding_sandwich(&u, 0.5, 1.0, 2.0, &l, &q, DEFAULT_TOL).unwrap();
        assert!(c.pass && c.m_bounded && c.weighted_t_finite);
        let w = AnalyticField::power(2, 0.75);
        let c = check_embedding_sandwich(&w, 0.5, 1.0, 2.0, &l, &q, DEFAULT_TOL).unwrap();
        assert!(c.pass && !c.m_bounded && c.weighted_t_finite);
        let z = AnalyticField::constant(2, 0.0);
        let c = check_embedding_sandwich(&z, 0.5, 1.0, 2.0, &l, &q, DEFAULT_TOL).unwrap();
        assert!(c.pass && c.weighted_s.iter().all(|&v| v == 0.0));
    }
}
