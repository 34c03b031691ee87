//! Homogeneous constant-coefficient scalar operators `A = i^m Σ_{|α|₁=m} a_α ∂^α`.
//!
//! An operator is stored through its coefficient table `α ↦ a_α`, which is
//! also the coefficient table of its symbol `A(ξ) = Σ a_α ξ^α`. Composition
//! of operators is convolution of tables, so the tables form a commutative
//! ring isomorphic to the ring of homogeneous symbol polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::multi_index::{indices_of_order, MultiIndex};
use crate::error::{Error, Result};

/// Exact zeros are pruned from coefficient tables; nothing else is.
fn prune(coeffs: &mut BTreeMap<MultiIndex, Complex64>) {
    coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
}

#[derive(Clone, PartialEq)]
pub struct ScalarOperator {
    dim: usize,
    order: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl ScalarOperator {
    /// Builds a pure-order operator. Every key must have length `dim` and
    /// order `order`; an all-zero table is rejected (use [`Self::zero`]).
    pub fn new<I>(dim: usize, order: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be >= 1".into()));
        }
        let mut table = BTreeMap::new();
        for (alpha, c) in coeffs {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: alpha.dim() });
            }
            if alpha.order() != order {
                return Err(Error::OrderMismatch(order, alpha.order()));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidInput(format!("non-finite coefficient at {alpha:?}")));
            }
            *table.entry(alpha).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        prune(&mut table);
        if table.is_empty() {
            return Err(Error::InvalidInput(
                "all coefficients vanish; use ScalarOperator::zero".into(),
            ));
        }
        Ok(Self { dim, order, coeffs: table })
    }

    /// The distinguished zero operator. It has no order and is the identity
    /// of addition against operators of any order.
    pub fn zero(dim: usize) -> Self {
        Self { dim, order: 0, coeffs: BTreeMap::new() }
    }

    /// Order-0 identity operator.
    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(dim: usize, c: Complex64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(MultiIndex::zero(dim), c);
        prune(&mut coeffs);
        Self { dim, order: 0, coeffs }
    }

    /// `−Δ`, symbol `|ξ|²`.
    pub fn neg_laplacian(dim: usize) -> Self {
        let coeffs = (0..dim).map(|j| {
            let mut e = vec![0; dim];
            e[j] = 2;
            (MultiIndex::new(e).unwrap(), Complex64::new(1.0, 0.0))
        });
        Self::new(dim, 2, coeffs).expect("laplacian is well formed")
    }

    /// `Δ^k`, symbol `(−1)^k |ξ|^{2k}`.
    pub fn laplacian_power(dim: usize, k: usize) -> Self {
        let mut op = Self::identity(dim);
        let base = Self::neg_laplacian(dim);
        for _ in 0..k {
            op = op.multiply(&base).expect("same dimension");
        }
        if k % 2 == 1 {
            op = op.scale(Complex64::new(-1.0, 0.0));
        }
        op
    }

    /// `Δ²`, symbol `|ξ|⁴`.
    pub fn bilaplacian(dim: usize) -> Self {
        Self::laplacian_power(dim, 2)
    }

    /// `∂_j` (zero-based `j`), stored as `a_{e_j} = −i` so that `i·(−i)∂_j = ∂_j`.
    pub fn partial(dim: usize, j: usize) -> Result<Self> {
        if j >= dim {
            return Err(Error::InvalidInput(format!("axis {j} out of range for N={dim}")));
        }
        Self::new(dim, 1, [(MultiIndex::unit(dim, j), Complex64::new(0.0, -1.0))])
    }

    /// The Cauchy–Riemann operator `∂̄ = (∂₁ + i∂₂)/2` in `N = 2`.
    pub fn cauchy_riemann() -> Self {
        Self::new(
            2,
            1,
            [
                (MultiIndex::unit(2, 0), Complex64::new(0.0, -0.5)),
                (MultiIndex::unit(2, 1), Complex64::new(0.5, 0.0)),
            ],
        )
        .expect("well formed")
    }

    /// The conjugate operator `∂ = (∂₁ − i∂₂)/2` in `N = 2`.
    pub fn cauchy_riemann_conjugate() -> Self {
        Self::new(
            2,
            1,
            [
                (MultiIndex::unit(2, 0), Complex64::new(0.0, -0.5)),
                (MultiIndex::unit(2, 1), Complex64::new(-0.5, 0.0)),
            ],
        )
        .expect("well formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.order)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.coeffs.get(alpha).copied().unwrap_or_default()
    }

    /// `Σ |a_α|`.
    pub fn coeff_l1(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    pub fn coeff_max(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn check_point(&self, xi: &[f64]) -> Result<()> {
        if xi.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: xi.len() });
        }
        Ok(())
    }

    /// `A(ξ) = Σ a_α ξ^α`.
    pub fn eval_symbol(&self, xi: &[f64]) -> Result<Complex64> {
        self.check_point(xi)?;
        Ok(self.symbol_unchecked(xi))
    }

    pub(crate) fn symbol_unchecked(&self, xi: &[f64]) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(alpha, c)| c * alpha.monomial(xi))
            .sum()
    }

    /// The multiplier `σ_A(ξ) = (−1)^m A(ξ)` with `F(Au) = σ_A û` under
    /// the transform convention `F(∂_j u) = iξ_j û`.
    pub fn fourier_symbol(&self, xi: &[f64]) -> Result<Complex64> {
        self.check_point(xi)?;
        Ok(self.fourier_symbol_unchecked(xi))
    }

    pub(crate) fn fourier_symbol_unchecked(&self, xi: &[f64]) -> Complex64 {
        let s = self.symbol_unchecked(xi);
        if self.order % 2 == 1 {
            -s
        } else {
            s
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut coeffs: BTreeMap<_, _> =
            self.coeffs.iter().map(|(a, v)| (a.clone(), v * c)).collect();
        prune(&mut coeffs);
        Self { dim: self.dim, order: self.order, coeffs }
    }

    /// Coefficientwise sum. Zero absorbs any order tag; otherwise orders must
    /// agree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let mut coeffs = self.coeffs.clone();
        for (alpha, c) in &other.coeffs {
            *coeffs.entry(alpha.clone()).or_default() += c;
        }
        prune(&mut coeffs);
        Ok(Self { dim: self.dim, order: self.order, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Composition, i.e. convolution of coefficient tables.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.dim));
        }
        let mut coeffs: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                *coeffs.entry(a.add(b)).or_default() += ca * cb;
            }
        }
        prune(&mut coeffs);
        Ok(Self { dim: self.dim, order: self.order + other.order, coeffs })
    }

    /// Max absolute coefficient difference, treating missing keys as zero.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<&MultiIndex> = self.coeffs.keys().collect();
        keys.extend(other.coeffs.keys());
        keys.into_iter()
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// All multi-indices that can carry a coefficient.
    pub fn support_indices(&self) -> Vec<MultiIndex> {
        indices_of_order(self.order, self.dim)
    }
}

impl fmt::Debug for ScalarOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "ScalarOperator(0; N={})", self.dim);
        }
        write!(f, "ScalarOperator(N={}, m={}, ", self.dim, self.order)?;
        f.debug_map().entries(self.coeffs.iter()).finish()?;
        write!(f, ")")
    }
}
