//! The finite-part pairing `⟨Ê, φ⟩` of the fundamental solution of a
//! homogeneous elliptic operator against a frequency-side test function.
//!
//! With `ψ_φ(ρ) = ∫_{S^{N−1}} A(σ)^{−1} φ(ρσ) dσ` and `k = m − N`:
//!
//! - `m < N`: `⟨Ê, φ⟩ = ∫_0^∞ ρ^{N−1−m} ψ_φ(ρ) dρ`;
//! - `m ≥ N`: `⟨Ê, φ⟩ = (1/k!)[−∫_0^∞ log ρ · ψ_φ^{(k+1)}(ρ) dρ + H_k ψ_φ^{(k)}(0)]`
//!   with `H_k = Σ_{j=1}^k 1/j`.
//!
//! Derivatives of `ψ_φ` come from radial derivatives of `φ` supplied by the
//! test function, so no limits in `ε` are taken numerically.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quadrature::{LineRule, SphereRule, SphereRuleKind};
use crate::symbol::multi_index::{binomial, factorial};
use crate::symbol::{check_ellipticity, MultiIndex, ScalarOperator};

/// A test function on frequency space with radial derivatives along rays.
pub trait RadialTestFunction {
    fn dim(&self) -> usize;

    /// Radius outside which the function is treated as zero.
    fn support_radius(&self) -> f64;

    /// `(d/dρ)^j φ(ρσ)` for a unit vector `σ`, or `None` when the order is
    /// not available.
    fn radial_derivative(&self, sigma: &[f64], rho: f64, j: usize) -> Option<Complex64>;

    /// Whether derivatives come from a numerical fallback.
    fn is_approximate(&self) -> bool {
        false
    }
}

/// `φ(ξ) = P(ξ)·exp(−|ξ|²/w²)`, truncated at `w·√40`.
#[derive(Clone, Debug)]
pub struct PolyGaussian {
    pub poly: Polynomial,
    pub width: f64,
}

/// `d^n/dx^n exp(−x²) = (−1)^n H_n(x) exp(−x²)`.
fn hermite(n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, 2.0 * x);
    if n == 0 {
        return a;
    }
    for k in 1..n {
        let c = 2.0 * x * b - 2.0 * k as f64 * a;
        a = b;
        b = c;
    }
    b
}

/// `∫_ℝ t^b exp(−t²/w²) dt`.
fn gaussian_moment(b: u32, w: f64) -> f64 {
    if b % 2 == 1 {
        return 0.0;
    }
    // Γ((b+1)/2) for even b by recursion from Γ(1/2).
    let mut gamma = std::f64::consts::PI.sqrt();
    let mut x = 0.5;
    while x < (b as f64 + 1.0) / 2.0 - 1e-12 {
        gamma *= x;
        x += 1.0;
    }
    w.powi(b as i32 + 1) * gamma
}

impl PolyGaussian {
    pub fn new(poly: Polynomial, width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::InvalidInput(format!("Gaussian width {width} must be positive")));
        }
        Ok(Self { poly, width })
    }

    pub fn gaussian(dim: usize, width: f64) -> Result<Self> {
        Self::new(Polynomial::monomial(MultiIndex::zero(dim), Complex64::new(1.0, 0.0)), width)
    }

    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        self.poly.eval(xi) * (-r2 / (self.width * self.width)).exp()
    }

    /// `∫_{ℝ^N} φ` from Gaussian moments.
    pub fn integral(&self) -> Complex64 {
        self.poly
            .terms()
            .map(|(alpha, c)| c * alpha.entries().iter().map(|&b| gaussian_moment(b, self.width)).product::<f64>())
            .sum()
    }

    /// The test function `A(ξ)·φ(ξ)`.
    pub fn times_symbol(&self, op: &ScalarOperator) -> Result<Self> {
        let mut terms = Vec::new();
        for (a, ca) in op.coeffs() {
            for (b, cb) in self.poly.terms() {
                terms.push((a.add(b), ca * cb));
            }
        }
        Self::new(Polynomial::new(self.poly.dim(), terms)?, self.width)
    }

    /// The test function `ξ^α·φ(ξ)`.
    pub fn times_monomial(&self, alpha: &MultiIndex) -> Result<Self> {
        let terms: Vec<_> = self.poly.terms().map(|(b, c)| (alpha.add(b), *c)).collect();
        Self::new(Polynomial::new(self.poly.dim(), terms)?, self.width)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { poly: self.poly.scale(c), width: self.width }
    }
}

impl RadialTestFunction for PolyGaussian {
    fn dim(&self) -> usize {
        self.poly.dim()
    }

    fn support_radius(&self) -> f64 {
        self.width * 40f64.sqrt()
    }

    fn radial_derivative(&self, sigma: &[f64], rho: f64, j: usize) -> Option<Complex64> {
        // φ(ρσ) = Σ_k P_k(σ) ρ^k g(ρ), g(ρ) = exp(−ρ²/w²).
        let w = self.width;
        let x = rho / w;
        let g = (-x * x).exp();
        let gd = |n: usize| (-1.0f64 / w).powi(n as i32) * hermite(n, x) * g;
        let mut total = Complex64::default();
        for (alpha, c) in self.poly.terms() {
            let k = alpha.order();
            let mut d = 0.0;
            for i in 0..=j.min(k) {
                let falling = factorial(k) / factorial(k - i);
                d += binomial(j, i) as f64 * falling * rho.powi((k - i) as i32) * gd(j - i);
            }
            total += c * alpha.monomial(sigma) * d;
        }
        Some(total)
    }
}

/// Radial derivatives of an arbitrary point-evaluable test function by
/// central differences with one Richardson step.
pub struct FiniteDifferenceTest<F> {
    pub dim: usize,
    pub support: f64,
    pub step: f64,
    pub f: F,
}

impl<F: Fn(&[f64]) -> Complex64> FiniteDifferenceTest<F> {
    fn central(&self, sigma: &[f64], rho: f64, j: usize, h: f64) -> Complex64 {
        let mut x = vec![0.0; self.dim];
        let mut sum = Complex64::default();
        for i in 0..=j {
            let t = rho + (j as f64 / 2.0 - i as f64) * h;
            for (xi, si) in x.iter_mut().zip(sigma) {
                *xi = t * si;
            }
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binomial(j, i) as f64 * (self.f)(&x);
        }
        sum / h.powi(j as i32)
    }
}

impl<F: Fn(&[f64]) -> Complex64> RadialTestFunction for FiniteDifferenceTest<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn support_radius(&self) -> f64 {
        self.support
    }

    fn radial_derivative(&self, sigma: &[f64], rho: f64, j: usize) -> Option<Complex64> {
        if j == 0 {
            return Some(self.central(sigma, rho, 0, self.step));
        }
        let coarse = self.central(sigma, rho, j, self.step);
        let fine = self.central(sigma, rho, j, 0.5 * self.step);
        Some((4.0 * fine - coarse) / 3.0)
    }

    fn is_approximate(&self) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FinitePartQuadrature {
    pub sphere: SphereRuleKind,
    pub angular: usize,
    pub radial_order: usize,
    /// Dyadic panels toward `ρ = 0`.
    pub graded_levels: usize,
    /// Uniform panels on the outer part of the support.
    pub outer_panels: usize,
}

impl FinitePartQuadrature {
    pub fn for_dim(dim: usize) -> Self {
        let (sphere, angular) = match dim {
            1 => (SphereRuleKind::ProductAngles, 1),
            2 => (SphereRuleKind::ProductAngles, 32),
            3 => (SphereRuleKind::ProductAngles, 16),
            _ => (SphereRuleKind::ProductAngles, 8),
        };
        Self { sphere, angular, radial_order: 16, graded_levels: 40, outer_panels: 24 }
    }

    /// The same rule with doubled angular resolution.
    pub fn refined(&self) -> Self {
        Self { angular: 2 * self.angular, ..*self }
    }

    fn radial_rule(&self, support: f64, core: f64) -> LineRule {
        let core = core.min(support);
        let mut rule = LineRule::graded_from_zero(core, self.graded_levels, self.radial_order);
        if support > core {
            let outer = LineRule::composite(core, support, self.outer_panels, self.radial_order);
            rule.nodes.extend(outer.nodes);
            rule.weights.extend(outer.weights);
        }
        rule
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingBranch {
    /// `m < N`: `A^{−1}` is locally integrable.
    Direct,
    /// `m ≥ N`: regularized finite part.
    FinitePart,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingDiagnostics {
    pub sphere_nodes: usize,
    pub radial_nodes: usize,
    pub highest_derivative: usize,
    pub support_radius: f64,
    pub approximate_derivatives: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitePartResult {
    pub value: Complex64,
    pub branch: PairingBranch,
    pub diagnostics: PairingDiagnostics,
}

/// `Σ_{j=1}^k 1/j`.
pub fn harmonic_number(k: usize) -> f64 {
    (1..=k).map(|j| 1.0 / j as f64).sum()
}

struct Psi<'a> {
    phi: &'a dyn RadialTestFunction,
    sphere: SphereRule,
    inv_symbol: Vec<Complex64>,
}

impl Psi<'_> {
    fn derivative(&self, rho: f64, j: usize) -> Result<Complex64> {
        let mut total = Complex64::default();
        for ((sigma, w), inv) in self.sphere.iter().zip(&self.inv_symbol) {
            let d = self
                .phi
                .radial_derivative(sigma, rho, j)
                .ok_or_else(|| Error::InvalidInput(format!("test function lacks radial derivative of order {j}")))?;
            total += w * inv * d;
        }
        Ok(total)
    }
}

/// `⟨Ê, φ⟩` for the fundamental solution of an elliptic `op`.
pub fn finite_part_pairing(
    op: &ScalarOperator,
    phi: &dyn RadialTestFunction,
    quad: &FinitePartQuadrature,
) -> Result<FinitePartResult> {
    let dim = op.dim();
    if phi.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: phi.dim() });
    }
    let m = op.order().ok_or_else(|| Error::InvalidInput("zero operator".into()))?;
    let report = check_ellipticity(op, 128)?;
    if !report.elliptic {
        return Err(Error::Precondition(format!("operator is not elliptic (margin {:.3e})", report.margin)));
    }
    let sphere = SphereRule::with_kind(dim, quad.angular, quad.sphere);
    let inv_symbol = sphere.nodes.iter().map(|s| 1.0 / op.symbol_unchecked(s)).collect();
    let psi = Psi { phi, sphere, inv_symbol };
    let support = phi.support_radius();
    let rule = quad.radial_rule(support, (support / 40f64.sqrt()).max(f64::MIN_POSITIVE));
    let (value, branch, highest) = if m < dim {
        let p = (dim - 1 - m) as i32;
        let mut v = Complex64::default();
        for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
            v += w * r.powi(p) * psi.derivative(r, 0)?;
        }
        (v, PairingBranch::Direct, 0)
    } else {
        let k = m - dim;
        let mut integral = Complex64::default();
        for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
            integral += w * r.ln() * psi.derivative(r, k + 1)?;
        }
        let at_zero = psi.derivative(0.0, k)?;
        ((-integral + harmonic_number(k) * at_zero) / factorial(k), PairingBranch::FinitePart, k + 1)
    };
    Ok(FinitePartResult {
        value,
        branch,
        diagnostics: PairingDiagnostics {
            sphere_nodes: psi.sphere.len(),
            radial_nodes: rule.nodes.len(),
            highest_derivative: highest,
            support_radius: support,
            approximate_derivatives: phi.is_approximate(),
        },
    })
}

/// `∫ ξ^α A(ξ)^{−1} φ(ξ) dξ` for `|α|₁ = m`, computed as an absolutely
/// convergent polar integral of a degree-zero multiplier.
pub fn degree_zero_integral(
    op: &ScalarOperator,
    alpha: &MultiIndex,
    phi: &dyn RadialTestFunction,
    quad: &FinitePartQuadrature,
) -> Result<Complex64> {
    let dim = op.dim();
    if op.order() != Some(alpha.order()) {
        return Err(Error::InvalidInput("multi-index order must equal the operator order".into()));
    }
    let sphere = SphereRule::with_kind(dim, quad.angular, quad.sphere);
    let support = phi.support_radius();
    let rule = quad.radial_rule(support, support / 40f64.sqrt());
    let mut total = Complex64::default();
    for (sigma, ws) in sphere.iter() {
        let mult = alpha.monomial(sigma) / op.symbol_unchecked(sigma);
        let mut radial = Complex64::default();
        for (&r, &wr) in rule.nodes.iter().zip(&rule.weights) {
            let v = phi.radial_derivative(sigma, r, 0).unwrap_or_default();
            radial += wr * r.powi(dim as i32 - 1) * v;
        }
        total += ws * mult * radial;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sample_poly(dim: usize) -> Polynomial {
        let mut e1 = vec![0; dim];
        e1[0] = 1;
        let mut e2 = vec![0; dim];
        e2[0] = 2;
        e2[dim - 1] += 2;
        Polynomial::new(
            dim,
            [
                (MultiIndex::zero(dim), c(1.0)),
                (MultiIndex::new(e1).unwrap(), Complex64::new(0.5, -0.25)),
                (MultiIndex::new(e2).unwrap(), c(0.3)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn radial_derivatives_match_differences() {
        let phi = PolyGaussian::new(sample_poly(2), 1.3).unwrap();
        let sigma = [0.6, 0.8];
        let h = 1e-4;
        for j in 0..3 {
            for rho in [0.0, 0.4, 1.7] {
                let d = |r: f64| phi.radial_derivative(&sigma, r, j).unwrap();
                let fd = (d(rho + h) - d(rho - h)) / (2.0 * h);
                let exact = phi.radial_derivative(&sigma, rho, j + 1).unwrap();
                assert!((fd - exact).norm() < 1e-6, "j={j} rho={rho}");
            }
        }
    }

    #[test]
    fn gaussian_integral_oracle() {
        let phi = PolyGaussian::gaussian(3, 1.0).unwrap();
        assert!((phi.integral() - c(PI.powf(1.5))).norm() < 1e-12);
    }

    #[test]
    fn direct_branch_newtonian() {
        let phi = PolyGaussian::gaussian(3, 1.0).unwrap();
        let r = finite_part_pairing(&ScalarOperator::neg_laplacian(3), &phi, &FinitePartQuadrature::for_dim(3)).unwrap();
        assert_eq!(r.branch, PairingBranch::Direct);
        assert!((r.value - c(2.0 * PI.powf(1.5))).norm() < 1e-8);
    }

    #[test]
    fn division_identity() {
        for (op, dim) in [
            (ScalarOperator::neg_laplacian(2), 2),
            (ScalarOperator::bilaplacian(2), 2),
            (ScalarOperator::bilaplacian(3), 3),
            (ScalarOperator::cauchy_riemann(), 2),
        ] {
            let phi = PolyGaussian::new(sample_poly(dim), 1.0).unwrap();
            let test = phi.times_symbol(&op).unwrap();
            let r = finite_part_pairing(&op, &test, &FinitePartQuadrature::for_dim(dim)).unwrap();
            let expected = phi.integral();
            assert!((r.value - expected).norm() < 1e-6 * expected.norm(), "{:?} vs {expected}", r.value);
        }
    }

    #[test]
    fn vanishing_moments() {
        let op = ScalarOperator::bilaplacian(2);
        let alpha = MultiIndex::new(vec![3, 1]).unwrap();
        let base = PolyGaussian::new(sample_poly(2), 0.8).unwrap();
        let test = base.times_monomial(&alpha).unwrap();
        let quad = FinitePartQuadrature::for_dim(2);
        let r = finite_part_pairing(&op, &test, &quad).unwrap();
        let direct = degree_zero_integral(&op, &alpha, &base, &quad).unwrap();
        assert!((r.value - direct).norm() < 1e-6 * direct.norm().max(1.0));
    }

    #[test]
    fn linear_and_stable_under_refinement() {
        let op = ScalarOperator::neg_laplacian(2);
        let quad = FinitePartQuadrature::for_dim(2);
        let a = PolyGaussian::new(sample_poly(2), 1.0).unwrap();
        let b = PolyGaussian::gaussian(2, 1.0).unwrap();
        let sum = PolyGaussian::new(a.poly.add(&b.poly.scale(c(2.0))).unwrap(), 1.0).unwrap();
        let va = finite_part_pairing(&op, &a, &quad).unwrap().value;
        let vb = finite_part_pairing(&op, &b, &quad).unwrap().value;
        let vs = finite_part_pairing(&op, &sum, &quad).unwrap().value;
        assert!((vs - va - 2.0 * vb).norm() < 1e-10);
        let fine = finite_part_pairing(&op, &a, &quad.refined()).unwrap().value;
        assert!((fine - va).norm() < 1e-6);
    }

    #[test]
    fn fallback_is_flagged() {
        let op = ScalarOperator::neg_laplacian(2);
        let g = PolyGaussian::gaussian(2, 1.0).unwrap();
        let exact = finite_part_pairing(&op, &g, &FinitePartQuadrature::for_dim(2)).unwrap();
        let fd = FiniteDifferenceTest { dim: 2, support: g.support_radius(), step: 1e-3, f: |x: &[f64]| g.eval(x) };
        let r = finite_part_pairing(&op, &fd, &FinitePartQuadrature::for_dim(2)).unwrap();
        assert!(r.diagnostics.approximate_derivatives);
        assert!((r.value - exact.value).norm() < 1e-5);
    }
}
