//! Fourier-multiplier application and inversion of scalar operators and
//! DN systems on the torus.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::grid::{fft_nd, GridField, GridSpec, VectorGridField};
use crate::error::{Error, Result};
use crate::symbol::{check_ellipticity, DNSystem, MultiIndex, ScalarOperator};

/// Zero-mean tolerance relative to the RMS of the source.
pub const MEAN_TOL: f64 = 1e-12;
const ELLIPTICITY_REFINEMENT: usize = 128;

fn check_dim(op: &ScalarOperator, spec: &GridSpec) -> Result<()> {
    if op.dim() != spec.dim {
        return Err(Error::DimensionMismatch { expected: spec.dim, got: op.dim() });
    }
    Ok(())
}

fn require_elliptic(op: &ScalarOperator) -> Result<()> {
    let report = check_ellipticity(op, ELLIPTICITY_REFINEMENT)?;
    if !report.elliptic {
        return Err(Error::Precondition(format!(
            "operator is not elliptic (sphere margin {:.3e})",
            report.margin
        )));
    }
    Ok(())
}

fn require_zero_mean(f: &GridField) -> Result<()> {
    let mean = f.mean().norm();
    if mean > MEAN_TOL * f.rms() {
        return Err(Error::Compatibility(format!(
            "source mean {mean:.3e} is not zero (rms {:.3e})",
            f.rms()
        )));
    }
    Ok(())
}

/// `(iξ)^α`.
fn derivative_symbol(alpha: &MultiIndex, xi: &[f64]) -> Complex64 {
    Complex64::i().powu(alpha.order() as u32) * alpha.monomial(xi)
}

/// Applies `op` modewise through its Fourier symbol.
pub fn spectral_apply(op: &ScalarOperator, u: &GridField) -> Result<GridField> {
    check_dim(op, &u.spec)?;
    Ok(u.apply_multiplier(|xi| op.fourier_symbol_unchecked(xi)))
}

/// `∂^α u` by the multiplier `(iξ)^α`.
pub fn spectral_derivative(alpha: &MultiIndex, u: &GridField) -> Result<GridField> {
    if alpha.dim() != u.spec.dim {
        return Err(Error::DimensionMismatch { expected: u.spec.dim, got: alpha.dim() });
    }
    Ok(u.apply_multiplier(|xi| derivative_symbol(alpha, xi)))
}

fn is_zero_mode(xi: &[f64]) -> bool {
    xi.iter().all(|&v| v == 0.0)
}

/// `m(ξ)/σ_A(ξ)` on nonzero modes, 0 on the zero mode.
fn inverse_multiplier<'a>(
    op: &'a ScalarOperator,
    numerator: impl Fn(&[f64]) -> Complex64 + 'a,
) -> impl FnMut(&[f64]) -> Complex64 + 'a {
    move |xi| {
        if is_zero_mode(xi) {
            Complex64::default()
        } else {
            numerator(xi) / op.fourier_symbol_unchecked(xi)
        }
    }
}

/// The zero-mean solution of `Au = f`.
pub fn solve_scalar(op: &ScalarOperator, f: &GridField) -> Result<GridField> {
    derivative_field(op, &MultiIndex::zero(f.spec.dim), f)
}

/// `∂^α u` for the zero-mean solution `u` of `Au = f`, as the single
/// multiplier `(iξ)^α/σ_A(ξ)`.
pub fn derivative_field(op: &ScalarOperator, alpha: &MultiIndex, f: &GridField) -> Result<GridField> {
    check_dim(op, &f.spec)?;
    if alpha.dim() != f.spec.dim {
        return Err(Error::DimensionMismatch { expected: f.spec.dim, got: alpha.dim() });
    }
    require_elliptic(op)?;
    require_zero_mean(f)?;
    let alpha = alpha.clone();
    Ok(f.apply_multiplier(inverse_multiplier(op, move |xi| derivative_symbol(&alpha, xi))))
}

/// Largest `|ξ^α|/|A(ξ)|` over nonzero lattice modes and `|α|₁ = m`.
pub fn max_multiplier_magnitude(op: &ScalarOperator, spec: &GridSpec) -> Result<f64> {
    check_dim(op, spec)?;
    let m = op.order().ok_or_else(|| Error::InvalidInput("zero operator".into()))?;
    let alphas = crate::symbol::multi_index::indices_of_order(m, spec.dim);
    let mut best = 0.0f64;
    for xi in spec.frequencies().filter(|xi| !is_zero_mode(xi)) {
        let a = op.symbol_unchecked(&xi).norm();
        for alpha in &alphas {
            best = best.max(alpha.monomial(&xi).abs() / a);
        }
    }
    Ok(best)
}

fn check_system(sys: &DNSystem, f: &VectorGridField) -> Result<()> {
    if f.len() != sys.n() {
        return Err(Error::DimensionMismatch { expected: sys.n(), got: f.len() });
    }
    if f.spec().dim != sys.dim() {
        return Err(Error::DimensionMismatch { expected: sys.dim(), got: f.spec().dim });
    }
    Ok(())
}

/// `(Au)_j = Σ_k A_jk u_k` modewise.
pub fn apply_system(sys: &DNSystem, u: &VectorGridField) -> Result<VectorGridField> {
    check_system(sys, u)?;
    let spec = u.spec();
    let spectra: Vec<Vec<Complex64>> = u.components.iter().map(GridField::spectrum).collect();
    let mut out = vec![vec![Complex64::default(); spec.len()]; sys.n()];
    for (idx, xi) in spec.frequencies().enumerate() {
        let a = sys.fourier_symbol_matrix(&xi);
        for j in 0..sys.n() {
            out[j][idx] = (0..sys.n()).map(|k| a[(j, k)] * spectra[k][idx]).sum();
        }
    }
    to_fields(spec, out)
}

fn to_fields(spec: GridSpec, spectra: Vec<Vec<Complex64>>) -> Result<VectorGridField> {
    VectorGridField::new(
        spectra
            .into_iter()
            .map(|mut s| {
                fft_nd(&mut s, &spec, true);
                GridField { spec, values: s }
            })
            .collect(),
    )
}

fn prepare_system(sys: &DNSystem, f: &VectorGridField) -> Result<Vec<Vec<Complex64>>> {
    check_system(sys, f)?;
    let violations = sys.validate();
    if !violations.is_empty() {
        return Err(Error::Precondition(format!("invalid DN system: {violations:?}")));
    }
    let report = sys.check_ellipticity(ELLIPTICITY_REFINEMENT)?;
    if !report.elliptic {
        return Err(Error::NotElliptic(format!("det symbol margin {:.3e}", report.margin)));
    }
    for c in &f.components {
        require_zero_mean(c)?;
    }
    Ok(f.components.iter().map(GridField::spectrum).collect())
}

/// `û(ξ) = σ_A(ξ)^{−1} f̂(ξ)` by an LU solve on every nonzero mode.
pub fn solve_system(sys: &DNSystem, f: &VectorGridField) -> Result<VectorGridField> {
    let spectra = prepare_system(sys, f)?;
    let spec = f.spec();
    let n = sys.n();
    let mut out = vec![vec![Complex64::default(); spec.len()]; n];
    for (idx, xi) in spec.frequencies().enumerate() {
        if is_zero_mode(&xi) {
            continue;
        }
        let a: DMatrix<Complex64> = sys.fourier_symbol_matrix(&xi);
        let rhs = DVector::from_fn(n, |j, _| spectra[j][idx]);
        let sol = a.lu().solve(&rhs).ok_or_else(|| {
            Error::NotElliptic(format!("singular mode matrix at ξ = {xi:?}"))
        })?;
        for j in 0..n {
            out[j][idx] = sol[j];
        }
    }
    to_fields(spec, out)
}

/// The right inverse `u_ℓ = Σ_k C_kℓ (det A)^{−1} f_k` built from ring
/// cofactors.
pub fn solve_system_cofactor(sys: &DNSystem, f: &VectorGridField) -> Result<VectorGridField> {
    let spectra = prepare_system(sys, f)?;
    let det = sys.det()?;
    let cof = sys.cofactors()?;
    let spec = f.spec();
    let n = sys.n();
    let mut out = vec![vec![Complex64::default(); spec.len()]; n];
    for (idx, xi) in spec.frequencies().enumerate() {
        if is_zero_mode(&xi) {
            continue;
        }
        let d = det.fourier_symbol_unchecked(&xi);
        for (l, slot) in out.iter_mut().enumerate() {
            slot[idx] = (0..n).map(|k| cof[k][l].fourier_symbol_unchecked(&xi) * spectra[k][idx]).sum::<Complex64>() / d;
        }
    }
    to_fields(spec, out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemSolveReport {
    pub residual: f64,
    pub cofactor_agreement: f64,
}

/// Solves both ways and reports the round-trip residual and the
/// agreement of the two routes.
pub fn solve_system_checked(sys: &DNSystem, f: &VectorGridField) -> Result<(VectorGridField, SystemSolveReport)> {
    let u = solve_system(sys, f)?;
    let v = solve_system_cofactor(sys, f)?;
    let back = apply_system(sys, &u)?;
    let report = SystemSolveReport { residual: back.relative_diff(f), cofactor_agreement: v.relative_diff(&u) };
    Ok((u, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec2(n: usize, l: f64) -> GridSpec {
        GridSpec::new(2, n, l).unwrap()
    }

    fn smooth(spec: GridSpec, phase: f64) -> GridField {
        let l = spec.length;
        GridField::from_fn(spec, |x| {
            let a = 2.0 * PI * x[0] / l;
            let b = 2.0 * PI * x.get(1).copied().unwrap_or(0.0) / l;
            Complex64::new((a.sin() + phase).exp(), (a + 2.0 * b).cos())
        })
        .minus_mean()
    }

    #[test]
    fn laplacian_eigenmode() {
        let spec = GridSpec::new(3, 8, 3.0).unwrap();
        let u = GridField::from_fn(spec, |x| Complex64::new((2.0 * PI * x[0] / 3.0).cos(), 0.0));
        let au = spectral_apply(&ScalarOperator::neg_laplacian(3), &u).unwrap();
        let k = (2.0 * PI / 3.0).powi(2);
        assert!(au.relative_diff(&u.scale(Complex64::new(k, 0.0))) < 1e-12);
    }

    #[test]
    fn first_derivative_of_sine() {
        let spec = spec2(16, 2.0);
        let u = GridField::from_fn(spec, |x| Complex64::new((PI * x[0]).sin(), 0.0));
        let du = spectral_apply(&ScalarOperator::partial(2, 0).unwrap(), &u).unwrap();
        let exact = GridField::from_fn(spec, |x| Complex64::new(PI * (PI * x[0]).cos(), 0.0));
        assert!(du.relative_diff(&exact) < 1e-12);
    }

    #[test]
    fn solve_round_trip_and_eigenmode() {
        let spec = spec2(32, 2.0 * PI);
        let g = smooth(spec, 0.0);
        let op = ScalarOperator::neg_laplacian(2);
        let f = spectral_apply(&op, &g).unwrap();
        let u = solve_scalar(&op, &f).unwrap();
        assert!(u.relative_diff(&g) < 1e-9);
        let f = GridField::from_fn(spec, |x| Complex64::new(x[0].cos(), 0.0));
        let u = solve_scalar(&op, &f).unwrap();
        assert!(u.relative_diff(&f) < 1e-12);
    }

    #[test]
    fn cauchy_riemann_single_mode() {
        let spec = spec2(16, 2.0 * PI);
        let f = GridField::from_fn(spec, |x| Complex64::from_polar(1.0, x[0] + x[1]));
        let op = ScalarOperator::cauchy_riemann();
        let u = solve_scalar(&op, &f).unwrap();
        let sigma = op.fourier_symbol(&[1.0, 1.0]).unwrap();
        assert!(u.relative_diff(&f.scale(1.0 / sigma)) < 1e-12);
        assert!(spectral_apply(&op, &u).unwrap().relative_diff(&f) < 1e-12);
    }

    #[test]
    fn compatibility_and_ellipticity_errors() {
        let spec = spec2(8, 1.0);
        let one = GridField::from_fn(spec, |_| Complex64::new(1.0, 0.0));
        assert!(matches!(solve_scalar(&ScalarOperator::neg_laplacian(2), &one), Err(Error::Compatibility(_))));
        let f = smooth(spec, 0.0);
        assert!(matches!(
            solve_scalar(&ScalarOperator::partial(2, 0).unwrap(), &f),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn derivative_field_matches_differentiated_solution() {
        let spec = spec2(32, 2.0 * PI);
        let f = smooth(spec, 0.3);
        let op = ScalarOperator::neg_laplacian(2);
        let alpha = MultiIndex::new(vec![1, 1]).unwrap();
        let direct = derivative_field(&op, &alpha, &f).unwrap();
        let u = solve_scalar(&op, &f).unwrap();
        let later = spectral_derivative(&alpha, &u).unwrap();
        assert!(direct.relative_diff(&later) < 1e-10);
        let zero = derivative_field(&op, &MultiIndex::zero(2), &f).unwrap();
        assert_eq!(zero, u);
    }

    #[test]
    fn multiplier_bounded_by_inverse_margin() {
        let spec = spec2(16, 2.0 * PI);
        let op = ScalarOperator::neg_laplacian(2);
        assert!(max_multiplier_magnitude(&op, &spec).unwrap() <= 1.0 + 1e-12);
    }

    #[test]
    fn stokes_divergence_free_velocity() {
        let spec = spec2(32, 2.0 * PI);
        let sys = DNSystem::stokes(2);
        let f = VectorGridField::new(vec![smooth(spec, 0.0), smooth(spec, 0.5), GridField::zeros(spec)]).unwrap();
        let (u, report) = solve_system_checked(&sys, &f).unwrap();
        assert!(report.residual < 1e-9, "{report:?}");
        assert!(report.cofactor_agreement < 1e-8);
        let dx = spectral_derivative(&MultiIndex::unit(2, 0), &u.components[0]).unwrap();
        let dy = spectral_derivative(&MultiIndex::unit(2, 1), &u.components[1]).unwrap();
        let div = dx.add(&dy).unwrap();
        assert!(div.max_abs() < 1e-9 * u.components[0].max_abs().max(1.0));
    }

    #[test]
    fn diagonal_system_matches_scalar_solves() {
        let spec = spec2(16, 2.0 * PI);
        let ops = vec![ScalarOperator::neg_laplacian(2), ScalarOperator::cauchy_riemann()];
        let sys = DNSystem::diagonal(ops.clone()).unwrap();
        let f = VectorGridField::new(vec![smooth(spec, 0.1), smooth(spec, 0.2)]).unwrap();
        let u = solve_system(&sys, &f).unwrap();
        for (j, op) in ops.iter().enumerate() {
            let s = solve_scalar(op, &f.components[j]).unwrap();
            assert!(u.components[j].relative_diff(&s) < 1e-12);
        }
    }
}
