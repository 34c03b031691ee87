//! Operators acting on graded polynomial spaces `P_d`.

use num_complex::Complex64;
use serde::Serialize;

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::symbol::ellipticity::check_ellipticity;
use crate::symbol::multi_index::{binomial, indices_of_order, indices_up_to, MultiIndex};
use crate::symbol::ScalarOperator;

/// Angular refinement used when the poly routines need an ellipticity verdict.
const ELLIPTICITY_REFINEMENT: usize = 128;

/// Preimage residual tolerance relative to `‖π‖_coeff`.
pub const PREIMAGE_TOL: f64 = 1e-10;

/// Number of multi-indices of order `ell` in `N` variables, `C(N+ℓ−1, ℓ)`;
/// zero for `ell < 0`.
pub fn nu(ell: i64, dim: usize) -> usize {
    if ell < 0 || dim == 0 {
        return 0;
    }
    binomial(dim + ell as usize - 1, ell as usize)
}

/// `dim P_d = Σ_{ℓ≤d} ν(ℓ, N)`.
pub fn dim_p(degree: i64, dim: usize) -> usize {
    (0..=degree).map(|l| nu(l, dim)).sum()
}

fn i_pow(m: usize) -> Complex64 {
    match m % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `∂^α x^β = Π β_j!/(β_j−α_j)! · x^{β−α}`.
fn differentiate_monomial(alpha: &MultiIndex, beta: &MultiIndex) -> Option<(MultiIndex, f64)> {
    let rest = beta.checked_sub(alpha)?;
    let factor = beta
        .entries()
        .iter()
        .zip(alpha.entries())
        .map(|(&b, &a)| ((b - a + 1)..=b).map(|k| k as f64).product::<f64>())
        .product();
    Some((rest, factor))
}

/// Exact action `i^m Σ a_α ∂^α p`.
pub fn poly_apply(op: &ScalarOperator, p: &Polynomial) -> Result<Polynomial> {
    if op.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: op.dim(), got: p.dim() });
    }
    let Some(m) = op.order() else {
        return Ok(Polynomial::zero(p.dim()));
    };
    let prefactor = i_pow(m);
    let mut terms = Vec::new();
    for (beta, cb) in p.terms() {
        for (alpha, ca) in op.coeffs() {
            if let Some((rest, f)) = differentiate_monomial(alpha, beta) {
                terms.push((rest, prefactor * ca * cb * f));
            }
        }
    }
    Polynomial::new(p.dim(), terms)
}

/// Matrix of `A: P_d → P_{d−m}` in graded monomial bases.
#[derive(Clone, Debug)]
pub struct PolyMap {
    pub source_degree: i64,
    pub target_degree: i64,
    pub source_basis: Vec<MultiIndex>,
    pub target_basis: Vec<MultiIndex>,
    pub matrix: CMatrix,
}

impl PolyMap {
    pub fn source_dim(&self) -> usize {
        self.source_basis.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_basis.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }
}

fn block_matrix(op: &ScalarOperator, source: &[MultiIndex], target: &[MultiIndex]) -> CMatrix {
    let m = op.order().unwrap_or(0);
    let prefactor = i_pow(m);
    let row_of = |a: &MultiIndex| target.iter().position(|t| t == a);
    let mut mat = CMatrix::zeros(target.len(), source.len());
    for (col, beta) in source.iter().enumerate() {
        for (alpha, ca) in op.coeffs() {
            if let Some((rest, f)) = differentiate_monomial(alpha, beta) {
                if let Some(row) = row_of(&rest) {
                    mat[(row, col)] += prefactor * ca * f;
                }
            }
        }
    }
    mat
}

/// Matrix of `A` restricted to `P_d`.
pub fn operator_matrix(op: &ScalarOperator, degree: i64) -> PolyMap {
    let m = op.order().unwrap_or(0) as i64;
    let dim = op.dim();
    let source_basis = indices_up_to(degree, dim);
    let target_degree = degree - m;
    let target_basis = indices_up_to(target_degree, dim);
    let matrix = block_matrix(op, &source_basis, &target_basis);
    PolyMap { source_degree: degree, target_degree, source_basis, target_basis, matrix }
}

/// Homogeneous degree-`ℓ` polynomials annihilated by an operator.
#[derive(Clone, Debug)]
pub struct HarmonicSpace {
    pub ell: usize,
    /// Orthonormal (in coefficient space) kernel basis.
    pub basis: Vec<Polynomial>,
    pub block_rank: usize,
    /// `ν(ℓ,N) − ν(ℓ−m,N)`.
    pub formula_dim: usize,
    pub elliptic: bool,
}

impl HarmonicSpace {
    pub fn kernel_dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether the kernel dimension matches the formula. `None` when the
    /// operator is not elliptic and the formula is not asserted.
    pub fn formula_holds(&self) -> Option<bool> {
        self.elliptic.then(|| self.kernel_dim() == self.formula_dim)
    }
}

pub fn harmonic_space(op: &ScalarOperator, ell: usize) -> Result<HarmonicSpace> {
    if op.is_zero() {
        return Err(Error::InvalidInput("zero operator".into()));
    }
    let dim = op.dim();
    let m = op.order().unwrap_or(0);
    let elliptic = check_ellipticity(op, ELLIPTICITY_REFINEMENT)?.elliptic;
    let source = indices_of_order(ell, dim);
    let target = if ell >= m { indices_of_order(ell - m, dim) } else { Vec::new() };
    let block = block_matrix(op, &source, &target);
    let block_rank = linalg::rank(&block);
    let basis = linalg::kernel(&block)
        .into_iter()
        .map(|v| Polynomial::new(dim, source.iter().cloned().zip(v.iter().copied())))
        .collect::<Result<Vec<_>>>()?;
    Ok(HarmonicSpace {
        ell,
        basis,
        block_rank,
        formula_dim: nu(ell as i64, dim) - nu(ell as i64 - m as i64, dim),
        elliptic,
    })
}

/// Minimum-norm `ϖ ∈ P_{target_degree}` with `Aϖ = π`.
pub fn poly_preimage(op: &ScalarOperator, pi: &Polynomial, target_degree: i64) -> Result<Polynomial> {
    if op.dim() != pi.dim() {
        return Err(Error::DimensionMismatch { expected: op.dim(), got: pi.dim() });
    }
    let dim = op.dim();
    if pi.is_zero() {
        return Ok(Polynomial::zero(dim));
    }
    let m = op.order().unwrap_or(0) as i64;
    if pi.degree() > target_degree - m {
        return Err(Error::InvalidInput(format!(
            "deg π = {} exceeds target degree − m = {}",
            pi.degree(),
            target_degree - m
        )));
    }
    let map = operator_matrix(op, target_degree);
    let b = pi.to_vector(map.target_degree)?;
    let x = linalg::min_norm_solve(&map.matrix, &b);
    let pre = Polynomial::from_vector(dim, target_degree, &x)?;
    let residual = poly_apply(op, &pre)?.add(&pi.scale(Complex64::new(-1.0, 0.0)))?.coeff_norm();
    if residual > PREIMAGE_TOL * pi.coeff_norm() {
        return Err(Error::FormulaViolation(residual / pi.coeff_norm()));
    }
    Ok(pre)
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub kappa: usize,
    pub rank: usize,
    pub expected_rank: usize,
    pub pass: bool,
}

/// Rank of `A: P_{m+κ−1} → P_{κ−1}` against `dim P_{κ−1}`.
pub fn surjectivity_check(op: &ScalarOperator, kappa: usize) -> SurjectivityReport {
    let m = op.order().unwrap_or(0) as i64;
    let map = operator_matrix(op, m + kappa as i64 - 1);
    let rank = map.rank();
    let expected_rank = dim_p(kappa as i64 - 1, op.dim());
    SurjectivityReport { kappa, rank, expected_rank, pass: rank == expected_rank }
}

/// Coefficient vector helper for callers comparing maps.
pub fn apply_matrix(map: &PolyMap, p: &Polynomial) -> Result<Polynomial> {
    let v: CVector = p.to_vector(map.source_degree)?;
    Polynomial::from_vector(p.dim(), map.target_degree, &(&map.matrix * v))
}
