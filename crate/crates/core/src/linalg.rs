//! Small dense complex linear algebra on top of `nalgebra`'s SVD.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Singular values below `RANK_REL_TOL · σ_max` count as zero.
pub const RANK_REL_TOL: f64 = 1e-8;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Square-padded copy so that the SVD exposes a full right singular basis.
fn padded(m: &CMatrix) -> CMatrix {
    let (r, c) = m.shape();
    if r >= c {
        return m.clone();
    }
    let mut p = CMatrix::zeros(c, c);
    p.view_mut((0, 0), (r, c)).copy_from(m);
    p
}

/// Singular values of `m`, in no particular order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

fn threshold(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(0.0, f64::max);
    RANK_REL_TOL * max
}

/// Numerical rank with the relative threshold [`RANK_REL_TOL`].
pub fn rank(m: &CMatrix) -> usize {
    let sv = singular_values(m);
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    let t = threshold(&sv);
    sv.iter().filter(|&&s| s > t).count()
}

/// Orthonormal basis of the numerical kernel of `m`.
pub fn kernel(m: &CMatrix) -> Vec<CVector> {
    let (_, c) = m.shape();
    if c == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 || m.iter().all(|z| z.norm() == 0.0) {
        return (0..c)
            .map(|i| {
                let mut e = CVector::zeros(c);
                e[i] = Complex64::new(1.0, 0.0);
                e
            })
            .collect();
    }
    let p = padded(m);
    let svd = p.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let t = threshold(&sv);
    sv.iter()
        .enumerate()
        .filter(|(_, &s)| s <= t)
        .map(|(i, _)| v_t.row(i).adjoint().into_owned())
        .collect()
}

/// Minimum-norm least-squares solution of `m x = b`.
pub fn min_norm_solve(m: &CMatrix, b: &CVector) -> CVector {
    let (r, c) = m.shape();
    if c == 0 || r == 0 {
        return CVector::zeros(c);
    }
    let sv = singular_values(m);
    let t = threshold(&sv).max(f64::MIN_POSITIVE);
    let svd = m.clone().svd(true, true);
    svd.solve(b, t).expect("U and V were computed")
}
