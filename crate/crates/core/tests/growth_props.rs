use elliptica::growth::{
    ball_norm, classify, fitted_exponent, ladder_norms, m_norm, AnalyticField, QuadratureSpec, RadiusLadder,
    DEFAULT_TOL,
};
use elliptica::quadrature::ball_volume;
use elliptica::Complex64;
use proptest::prelude::*;

fn quad(dim: usize) -> QuadratureSpec {
    QuadratureSpec::for_dim(dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn power_exponent_is_recovered(t in -1.5..3.0f64, q in prop::sample::select(vec![1.0, 2.0, f64::INFINITY])) {
        // Ball norms of |x|^t need t·q > −N.
        prop_assume!(q.is_infinite() && t >= 0.0 || !q.is_infinite() && t * q > -2.0);
        let u = AnalyticField::power(3, t);
        let s = fitted_exponent(&u, q, &RadiusLadder::default(), &quad(3)).unwrap();
        prop_assert!((s - t).abs() <= 0.05, "t {t} q {q} fitted {s}");
    }

    #[test]
    fn norms_are_absolutely_homogeneous(c in -5.0..5.0f64, q in 1.0..4.0f64, r in 0.5..20.0f64) {
        let u = AnalyticField::one_plus_r_power(2, 0.7);
        let cu = u.scaled(Complex64::new(c, 0.0));
        let a = ball_norm(&cu, q, r, &quad(2)).unwrap();
        let b = c.abs() * ball_norm(&u, q, r, &quad(2)).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b));
    }

    #[test]
    fn triangle_inequality(q in 1.0..4.0f64, r in 0.5..20.0f64, a in -1.0..1.0f64) {
        let u = AnalyticField::coordinate(2, 0);
        let v = AnalyticField::smoothed_power(2, a, 0.5);
        let lhs = ball_norm(&u.sum(&v), q, r, &quad(2)).unwrap();
        let rhs = ball_norm(&u, q, r, &quad(2)).unwrap() + ball_norm(&v, q, r, &quad(2)).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn ball_norms_grow_along_any_ladder(r0 in 0.2..2.0f64, gamma in 1.1..2.0f64, q in 1.0..3.0f64) {
        let ladder = RadiusLadder::new(r0, gamma, 8).unwrap();
        let u = AnalyticField::smoothed_power(3, -1.0, 0.5);
        let norms = ladder_norms(&u, q, 0.0, &ladder, &quad(3)).unwrap();
        prop_assert!(norms.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn larger_s_gives_smaller_m_norm(s in -1.0..1.0f64, ds in 0.0..1.0f64, q in 1.0..3.0f64) {
        let u = AnalyticField::one_plus_r_power(3, 0.5);
        let ladder = RadiusLadder::default();
        let a = m_norm(&u, s, q, &ladder, &quad(3)).unwrap();
        let b = m_norm(&u, s + ds, q, &ladder, &quad(3)).unwrap();
        prop_assert!(b <= a * (1.0 + 1e-12));
    }
}

#[test]
fn m_norm_is_monotone_in_q() {
    // Hölder on each ball: averaged norms |B_R|^{-1/q}‖u‖_{q,B_R} increase with q.
    let u = AnalyticField::log_growth(3);
    let ladder = RadiusLadder::default();
    let q = quad(3);
    let norms: Vec<f64> = [1.0, 1.5, 2.0, 4.0, f64::INFINITY]
        .iter()
        .map(|&p| m_norm(&u, 0.5, p, &ladder, &q).unwrap() * ball_volume(3).powf(-1.0 / p))
        .collect();
    assert!(norms.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-9)), "{norms:?}");
}

#[test]
fn normalized_profile_is_scale_invariant() {
    // u(x) = |x|^t is homogeneous, so the normalized ball norm is flat.
    let u = AnalyticField::power(2, 1.5);
    let p = classify(&u, 2.0, 1.5, &RadiusLadder::default(), &quad(2), DEFAULT_TOL).unwrap();
    let first = p.normalized[0];
    assert!(p.normalized.iter().all(|v| (v - first).abs() <= 1e-9 * first));
}

#[test]
fn polynomial_degree_decides_membership() {
    let ladder = RadiusLadder::default();
    for (exps, degree) in [(vec![0, 0, 0], 0.0), (vec![1, 0, 0], 1.0), (vec![1, 1, 0], 2.0), (vec![2, 0, 2], 4.0)] {
        let spec = format!("monomial:{}", exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","));
        let u = AnalyticField::from_catalog(&spec, 3).unwrap();
        for s in [0.0, 1.0, 2.0, 3.0, 4.0] {
            let p = classify(&u, 2.0, s, &ladder, &quad(3), DEFAULT_TOL).unwrap();
            assert_eq!(p.consistent_m, degree <= s, "{spec} s={s}");
        }
    }
}
