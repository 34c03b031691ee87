use std::f64::consts::PI;

use elliptica::multiplier::{
    cz_ratio, solve_scalar, solve_system_checked, spectral_apply, BatterySpec, GridField, GridSpec, VectorGridField,
};
use elliptica::symbol::io::builtin_operator;
use elliptica::symbol::DNSystem;
use elliptica::{Complex64, Error};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn solve_then_apply_is_identity(seed in any::<u64>(), which in 0usize..3) {
        let name = ["laplacian", "bilaplacian", "cauchy_riemann"][which];
        let op = builtin_operator(name, 2).unwrap();
        let spec = GridSpec::new(2, 32, 2.0 * PI).unwrap();
        let f = BatterySpec { count: 1, seed, band: 8 }.fields(&spec).unwrap().remove(0).minus_mean();
        let u = solve_scalar(&op, &f).unwrap();
        prop_assert!(spectral_apply(&op, &u).unwrap().relative_diff(&f) <= 1e-9);
    }

    #[test]
    fn solve_is_linear(seed in any::<u64>(), a in -3.0..3.0f64) {
        let op = builtin_operator("laplacian", 2).unwrap();
        let spec = GridSpec::new(2, 16, 3.0).unwrap();
        let fs = BatterySpec { count: 2, seed, band: 5 }.fields(&spec).unwrap();
        let combo = fs[0].add(&fs[1].scale(Complex64::new(a, 0.0))).unwrap();
        let lhs = solve_scalar(&op, &combo).unwrap();
        let rhs = solve_scalar(&op, &fs[0]).unwrap().add(&solve_scalar(&op, &fs[1]).unwrap().scale(Complex64::new(a, 0.0))).unwrap();
        prop_assert!(lhs.relative_diff(&rhs) <= 1e-10);
    }

    #[test]
    fn stokes_routes_agree(seed in any::<u64>()) {
        let sys = DNSystem::stokes(2);
        let spec = GridSpec::new(2, 16, 2.0 * PI).unwrap();
        let f = VectorGridField::new(BatterySpec { count: 3, seed, band: 5 }.fields(&spec).unwrap()).unwrap();
        let (_, rep) = solve_system_checked(&sys, &f).unwrap();
        prop_assert!(rep.residual <= 1e-9 && rep.cofactor_agreement <= 1e-8);
    }

    #[test]
    fn l2_ratio_is_exact(seed in any::<u64>()) {
        let spec = GridSpec::new(2, 32, 2.0 * PI).unwrap();
        let f = BatterySpec { count: 1, seed, band: 8 }.fields(&spec).unwrap().remove(0);
        for (name, expected) in [("laplacian", 1.0), ("bilaplacian", 1.0), ("cauchy_riemann", 2.0)] {
            let r = cz_ratio(&builtin_operator(name, 2).unwrap(), &f, 2.0, 0).unwrap();
            prop_assert!((r - expected).abs() <= 1e-10, "{name}: {r}");
        }
    }
}

#[test]
fn grid_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = GridSpec::new(3, 8, 1.5).unwrap();
    let f = GridField::from_fn(spec, |x| Complex64::new(x[0] - x[2], x[1] * x[1]));
    let path = dir.path().join("f.grd");
    f.write(&path).unwrap();
    let g = GridField::read(&path).unwrap();
    assert_eq!(g.spec, f.spec);
    assert_eq!(g.values, f.values);
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(&bytes[..8], b"HESSOGRD");
    assert_eq!(bytes.len(), 8 + 4 + 4 + 4 + 8 + 16 * 512);
}

#[test]
fn nonzero_mean_is_incompatible() {
    let spec = GridSpec::new(2, 8, 1.0).unwrap();
    let f = GridField::from_fn(spec, |_| Complex64::new(1.0, 0.0));
    let out = solve_scalar(&builtin_operator("laplacian", 2).unwrap(), &f);
    assert!(matches!(out, Err(Error::Compatibility(_))));
}
