//! Douglis–Nirenberg systems: matrices of homogeneous operators whose entry
//! `(j, k)` has order `m_jk = m_k + κ_k − κ_j`, with determinants and
//! cofactors computed in the commutative ring of scalar operators.
//!
//! Indices are zero-based throughout.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ellipticity::{check_ellipticity, EllipticityReport};
use super::multi_index::indices_of_order;
use super::operator::ScalarOperator;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct DNSystem {
    dim: usize,
    m_weights: Vec<i64>,
    k_weights: Vec<i64>,
    entries: Vec<Vec<ScalarOperator>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Violation {
    /// Nonzero entry whose order differs from `m_jk`.
    WrongOrder { row: usize, col: usize, expected: i64, found: usize },
    /// Nonzero entry where `m_jk < 0` forces zero.
    MustBeZero { row: usize, col: usize, expected: i64 },
    /// Some `m_j < 0`.
    NegativeWeight { index: usize, value: i64 },
    /// Order table changed under `κ → κ + ι·1`.
    ShiftInvariance { shift: i64 },
}

impl DNSystem {
    /// Assembles a system. Shapes and dimensions are checked here; order
    /// constraints are reported by [`DNSystem::validate`].
    pub fn new(
        dim: usize,
        m_weights: Vec<i64>,
        k_weights: Vec<i64>,
        entries: Vec<Vec<ScalarOperator>>,
    ) -> Result<Self> {
        let n = m_weights.len();
        if n == 0 {
            return Err(Error::InvalidInput("system must have at least one row".into()));
        }
        if k_weights.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: k_weights.len() });
        }
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput(format!("entries must form a {n}x{n} array")));
        }
        for op in entries.iter().flatten() {
            if op.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: op.dim() });
            }
        }
        Ok(Self { dim, m_weights, k_weights, entries })
    }

    /// The Stokes system `−Δu + ∇p`, `div u` with `n = N + 1`,
    /// `m = (2, …, 2, 0)` and `κ = (0, …, 0, 1)`.
    pub fn stokes(dim: usize) -> Self {
        let n = dim + 1;
        let mut entries = vec![vec![ScalarOperator::zero(dim); n]; n];
        for j in 0..dim {
            entries[j][j] = ScalarOperator::neg_laplacian(dim);
            let dj = ScalarOperator::partial(dim, j).expect("axis in range");
            entries[j][dim] = dj.clone();
            entries[dim][j] = dj;
        }
        let mut m = vec![2; n];
        m[dim] = 0;
        let mut k = vec![0; n];
        k[dim] = 1;
        Self::new(dim, m, k, entries).expect("stokes is well formed")
    }

    /// Diagonal system with `κ = 0` and `m_j` equal to the entry orders.
    pub fn diagonal(ops: Vec<ScalarOperator>) -> Result<Self> {
        let n = ops.len();
        let dim = ops.first().map(|o| o.dim()).unwrap_or(1);
        let m: Vec<i64> = ops.iter().map(|o| o.order().unwrap_or(0) as i64).collect();
        let mut entries = vec![vec![ScalarOperator::zero(dim); n]; n];
        for (j, op) in ops.into_iter().enumerate() {
            entries[j][j] = op;
        }
        Self::new(dim, m, vec![0; n], entries)
    }

    /// A random system with uniform complex coefficients on
    /// every admissible entry. Always passes [`DNSystem::validate`].
    pub fn random_valid(seed: u64, n: usize, dim: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m: Vec<i64> = (0..n).map(|_| rng.random_range(0..=2)).collect();
        let k: Vec<i64> = (0..n).map(|_| rng.random_range(0..=1)).collect();
        let mut entries = vec![vec![ScalarOperator::zero(dim); n]; n];
        for (j, row) in entries.iter_mut().enumerate() {
            for (col, entry) in row.iter_mut().enumerate() {
                let order = m[col] + k[col] - k[j];
                if order < 0 {
                    continue;
                }
                let coeffs = indices_of_order(order as usize, dim).into_iter().map(|a| {
                    let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    (a, c)
                });
                *entry = ScalarOperator::new(dim, order as usize, coeffs)
                    .unwrap_or_else(|_| ScalarOperator::zero(dim));
            }
        }
        Self::new(dim, m, k, entries).expect("shapes are consistent")
    }

    pub fn n(&self) -> usize {
        self.m_weights.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m_weights(&self) -> &[i64] {
        &self.m_weights
    }

    pub fn k_weights(&self) -> &[i64] {
        &self.k_weights
    }

    pub fn entry(&self, j: usize, k: usize) -> &ScalarOperator {
        &self.entries[j][k]
    }

    pub fn entries(&self) -> &[Vec<ScalarOperator>] {
        &self.entries
    }

    /// `m_jk = m_k + κ_k − κ_j`.
    pub fn entry_order(&self, j: usize, k: usize) -> i64 {
        self.m_weights[k] + self.k_weights[k] - self.k_weights[j]
    }

    pub fn order_table(&self) -> Vec<Vec<i64>> {
        (0..self.n())
            .map(|j| (0..self.n()).map(|k| self.entry_order(j, k)).collect())
            .collect()
    }

    /// `M = Σ m_j`.
    pub fn total_order(&self) -> i64 {
        self.m_weights.iter().sum()
    }

    /// Same operator entries with `κ` replaced by `κ + ι·1`.
    pub fn shifted(&self, shift: i64) -> Self {
        let mut s = self.clone();
        for k in &mut s.k_weights {
            *k += shift;
        }
        s
    }

    pub fn with_entry(&self, j: usize, k: usize, op: ScalarOperator) -> Result<Self> {
        if j >= self.n() || k >= self.n() {
            return Err(Error::InvalidInput(format!("entry ({j},{k}) out of range")));
        }
        let mut s = self.clone();
        s.entries[j][k] = op;
        Self::new(s.dim, s.m_weights, s.k_weights, s.entries)
    }

    /// Every order and zero-pattern violation; empty for a valid system.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (index, &value) in self.m_weights.iter().enumerate() {
            if value < 0 {
                out.push(Violation::NegativeWeight { index, value });
            }
        }
        for j in 0..self.n() {
            for k in 0..self.n() {
                let expected = self.entry_order(j, k);
                let Some(found) = self.entries[j][k].order() else { continue };
                if expected < 0 {
                    out.push(Violation::MustBeZero { row: j, col: k, expected });
                } else if found as i64 != expected {
                    out.push(Violation::WrongOrder { row: j, col: k, expected, found });
                }
            }
        }
        let base = self.order_table();
        for shift in [-3, 1, 5] {
            if self.shifted(shift).order_table() != base {
                out.push(Violation::ShiftInvariance { shift });
            }
        }
        out
    }

    fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("invalid DN system: {v:?}")))
        }
    }

    /// Ring determinant by Leibniz expansion; homogeneous of order `M`.
    pub fn det(&self) -> Result<ScalarOperator> {
        self.require_valid()?;
        let refs: Vec<Vec<&ScalarOperator>> =
            self.entries.iter().map(|row| row.iter().collect()).collect();
        ring_det(&refs, self.dim)
    }

    /// Ring cofactor `C_jk = (−1)^{j+k} det(minor_jk)`.
    pub fn cofactor(&self, j: usize, k: usize) -> Result<ScalarOperator> {
        self.require_valid()?;
        let n = self.n();
        if j >= n || k >= n {
            return Err(Error::InvalidInput(format!("cofactor index ({j},{k}) out of range for n={n}")));
        }
        let minor: Vec<Vec<&ScalarOperator>> = (0..n)
            .filter(|&r| r != j)
            .map(|r| (0..n).filter(|&c| c != k).map(|c| &self.entries[r][c]).collect())
            .collect();
        let d = ring_det(&minor, self.dim)?;
        Ok(if (j + k) % 2 == 1 { d.scale(Complex64::new(-1.0, 0.0)) } else { d })
    }

    pub fn cofactors(&self) -> Result<Vec<Vec<ScalarOperator>>> {
        (0..self.n())
            .map(|j| (0..self.n()).map(|k| self.cofactor(j, k)).collect())
            .collect()
    }

    /// Residual of `Σ_ℓ A_{jℓ} C_{kℓ} = δ_jk det A` over all `(j, k)`.
    pub fn verify_cofactor_identity(&self) -> Result<CofactorResidual> {
        let det = self.det()?;
        let cof = self.cofactors()?;
        let n = self.n();
        let mut max_abs: f64 = 0.0;
        let mut scale: f64 = det.coeff_max();
        for j in 0..n {
            for k in 0..n {
                let mut acc = ScalarOperator::zero(self.dim);
                for l in 0..n {
                    let prod = self.entries[j][l].multiply(&cof[k][l])?;
                    scale = scale.max(prod.coeff_max());
                    acc = acc.add(&prod)?;
                }
                let target = if j == k { det.clone() } else { ScalarOperator::zero(self.dim) };
                max_abs = max_abs.max(acc.max_coeff_diff(&target));
            }
        }
        Ok(CofactorResidual {
            max_residual: max_abs,
            relative_residual: max_abs / scale.max(f64::MIN_POSITIVE),
        })
    }

    pub fn check_ellipticity(&self, refinement: usize) -> Result<EllipticityReport> {
        check_ellipticity(&self.det()?, refinement)
    }

    /// `[A_jk(ξ)]`.
    pub fn symbol_matrix(&self, xi: &[f64]) -> DMatrix<Complex64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |j, k| self.entries[j][k].symbol_unchecked(xi))
    }

    /// `[σ_{A_jk}(ξ)]`, the modewise multiplier matrix.
    pub fn fourier_symbol_matrix(&self, xi: &[f64]) -> DMatrix<Complex64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |j, k| self.entries[j][k].fourier_symbol_unchecked(xi))
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CofactorResidual {
    pub max_residual: f64,
    pub relative_residual: f64,
}

fn ring_det(rows: &[Vec<&ScalarOperator>], dim: usize) -> Result<ScalarOperator> {
    let n = rows.len();
    if n == 0 {
        return Ok(ScalarOperator::identity(dim));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = ScalarOperator::zero(dim);
    let mut sign = 1.0;
    // Heap's algorithm; each swap flips the permutation parity.
    let mut c = vec![0usize; n];
    let mut term = |perm: &[usize], sign: f64| -> Result<()> {
        let mut t = ScalarOperator::scalar(dim, Complex64::new(sign, 0.0));
        for (j, &k) in perm.iter().enumerate() {
            t = t.multiply(rows[j][k])?;
            if t.is_zero() {
                return Ok(());
            }
        }
        total = total.add(&t)?;
        Ok(())
    };
    term(&perm, sign)?;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            term(&perm, sign)?;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stokes_is_valid() {
        for dim in 2..=3 {
            assert!(DNSystem::stokes(dim).validate().is_empty());
        }
    }

    #[test]
    fn wrong_order_entry_is_reported() {
        let s = DNSystem::stokes(2);
        let bad = s.with_entry(0, 1, ScalarOperator::partial(2, 0).unwrap()).unwrap();
        let v = bad.validate();
        assert_eq!(v, vec![Violation::WrongOrder { row: 0, col: 1, expected: 2, found: 1 }]);
    }

    #[test]
    fn shifted_weights_keep_orders() {
        let s = DNSystem::stokes(2);
        let t = s.shifted(5);
        assert!(t.validate().is_empty());
        assert_eq!(s.order_table(), t.order_table());
    }

    #[test]
    fn stokes_determinants() {
        let d2 = DNSystem::stokes(2).det().unwrap();
        assert_eq!(d2.order(), Some(4));
        assert!(d2.max_coeff_diff(&ScalarOperator::laplacian_power(2, 2)) < 1e-14);
        let d3 = DNSystem::stokes(3).det().unwrap();
        assert_eq!(d3.order(), Some(6));
        let neg_lap3 = ScalarOperator::laplacian_power(3, 3).scale(Complex64::new(-1.0, 0.0));
        assert!(d3.max_coeff_diff(&neg_lap3) < 1e-14);
    }

    #[test]
    fn diagonal_det_and_cofactors() {
        let sys = DNSystem::diagonal(vec![
            ScalarOperator::neg_laplacian(2),
            ScalarOperator::cauchy_riemann(),
        ])
        .unwrap();
        let det = sys.det().unwrap();
        let xi = [0.4, -1.3];
        let r2 = xi[0] * xi[0] + xi[1] * xi[1];
        let expect = Complex64::new(xi[1] / 2.0, -xi[0] / 2.0) * r2;
        assert!((det.eval_symbol(&xi).unwrap() - expect).norm() < 1e-14);
        assert_eq!(sys.cofactor(0, 0).unwrap(), ScalarOperator::cauchy_riemann());
        assert!(sys.cofactor(0, 1).unwrap().is_zero());
    }

    #[test]
    fn one_by_one_cofactor_is_identity() {
        let sys = DNSystem::diagonal(vec![ScalarOperator::neg_laplacian(3)]).unwrap();
        assert_eq!(sys.cofactor(0, 0).unwrap(), ScalarOperator::identity(3));
        assert!(sys.cofactor(1, 0).is_err());
    }

    #[test]
    fn stokes_pressure_cofactor() {
        let c = DNSystem::stokes(2).cofactor(2, 2).unwrap();
        assert!(c.max_coeff_diff(&ScalarOperator::bilaplacian(2)) < 1e-14);
    }

    #[test]
    fn invalid_system_rejected_by_det() {
        let s = DNSystem::stokes(2);
        let bad = s.with_entry(0, 1, ScalarOperator::partial(2, 0).unwrap()).unwrap();
        assert!(matches!(bad.det(), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_elliptic_system_detected() {
        // det symbol ξ₁²|ξ|² vanishes at e₂.
        let d11 = ScalarOperator::partial(2, 0).unwrap();
        let sq = d11.multiply(&d11).unwrap().scale(Complex64::new(-1.0, 0.0));
        let sys = DNSystem::diagonal(vec![ScalarOperator::neg_laplacian(2), sq]).unwrap();
        let r = sys.check_ellipticity(32).unwrap();
        assert!(!r.elliptic);
    }
}
