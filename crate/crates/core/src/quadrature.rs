//! Gauss–Legendre rules, graded radial rules and sphere rules.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A one-dimensional rule: nodes with positive weights.
#[derive(Clone, Debug, Default)]
pub struct LineRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl LineRule {
    /// Gauss–Legendre on `panels` equal panels of `[a, b]`.
    pub fn composite(a: f64, b: f64, panels: usize, order: usize) -> Self {
        let (x, w) = gauss_legendre(order);
        let mut rule = Self::default();
        let h = (b - a) / panels as f64;
        for p in 0..panels {
            let lo = a + p as f64 * h;
            for (xi, wi) in x.iter().zip(&w) {
                rule.nodes.push(lo + 0.5 * h * (xi + 1.0));
                rule.weights.push(0.5 * h * wi);
            }
        }
        rule
    }

    /// Gauss–Legendre on geometrically graded panels `[b·2^{-j-1}, b·2^{-j}]`
    /// for `j < levels`, accurate for integrands with algebraic or
    /// logarithmic singularities at 0.
    pub fn graded_from_zero(b: f64, levels: usize, order: usize) -> Self {
        let mut rule = Self::default();
        let (x, w) = gauss_legendre(order);
        for j in (0..levels).rev() {
            let hi = b * 0.5f64.powi(j as i32);
            let lo = hi * 0.5;
            let h = hi - lo;
            for (xi, wi) in x.iter().zip(&w) {
                rule.nodes.push(lo + 0.5 * h * (xi + 1.0));
                rule.weights.push(0.5 * h * wi);
            }
        }
        rule
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `|S^{N-1}| = 2π^{N/2}/Γ(N/2)`.
pub fn sphere_area(dim: usize) -> f64 {
    // Γ(N/2) by recursion from Γ(1) = 1, Γ(1/2) = √π.
    let mut gamma = if dim % 2 == 0 { 1.0 } else { PI.sqrt() };
    let mut x = if dim % 2 == 0 { 1.0 } else { 0.5 };
    while x < dim as f64 / 2.0 - 1e-12 {
        gamma *= x;
        x += 1.0;
    }
    2.0 * PI.powf(dim as f64 / 2.0) / gamma
}

/// `|B_1|` in dimension `N`.
pub fn ball_volume(dim: usize) -> f64 {
    sphere_area(dim) / dim as f64
}

/// How nodes on `S^{N-1}` are generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereRuleKind {
    /// Gauss–Legendre in each polar angle, trapezoid in the azimuth.
    ProductAngles,
    /// Seeded uniform Monte-Carlo points with equal weights.
    MonteCarlo { seed: u64 },
}

/// Quadrature on the unit sphere `S^{N-1}`.
#[derive(Clone, Debug)]
pub struct SphereRule {
    pub dim: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    /// Product rule with `n` polar nodes per angle and `2n` azimuth nodes.
    pub fn product(dim: usize, n: usize) -> Self {
        assert!(dim >= 1 && n >= 1);
        let (nodes, weights) = product_rule(dim, n);
        Self { dim, nodes, weights }
    }

    pub fn monte_carlo(dim: usize, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sphere_area(dim) / count as f64;
        let mut nodes = Vec::with_capacity(count);
        while nodes.len() < count {
            let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
            let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if r > 1e-12 {
                nodes.push(v.iter().map(|x| x / r).collect());
            }
        }
        Self { dim, nodes, weights: vec![w; count] }
    }

    pub fn with_kind(dim: usize, n: usize, kind: SphereRuleKind) -> Self {
        match kind {
            SphereRuleKind::ProductAngles => Self::product(dim, n),
            SphereRuleKind::MonteCarlo { seed } => {
                // Same node budget as the product rule of this resolution.
                let count = 2 * n * n.pow(dim.saturating_sub(2) as u32);
                Self::monte_carlo(dim, count.max(64), seed)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.nodes.iter().map(Vec::as_slice).zip(self.weights.iter().copied())
    }
}

fn product_rule(dim: usize, n: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    match dim {
        1 => (vec![vec![1.0], vec![-1.0]], vec![1.0, 1.0]),
        2 => {
            let m = 2 * n;
            let w = 2.0 * PI / m as f64;
            let nodes = (0..m)
                .map(|k| {
                    let t = 2.0 * PI * (k as f64 + 0.5) / m as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect();
            (nodes, vec![w; m])
        }
        _ => {
            let (inner_nodes, inner_weights) = product_rule(dim - 1, n);
            let (x, w) = gauss_legendre(n);
            // Odd N: t = cos θ with weight (1−t²)^{(N−3)/2}, polynomial in t,
            // so polynomial integrands are integrated exactly. Even N: θ itself.
            let polar: Vec<(f64, f64, f64)> = x
                .iter()
                .zip(&w)
                .map(|(&xi, &wi)| {
                    if dim % 2 == 1 {
                        let s = (1.0 - xi * xi).sqrt();
                        (xi, s, wi * s.powi(dim as i32 - 3))
                    } else {
                        let theta = 0.5 * PI * (xi + 1.0);
                        let (s, c) = theta.sin_cos();
                        (c, s, 0.5 * PI * wi * s.powi(dim as i32 - 2))
                    }
                })
                .collect();
            let mut nodes = Vec::with_capacity(n * inner_nodes.len());
            let mut weights = Vec::with_capacity(n * inner_nodes.len());
            for (c, s, wt) in polar {
                for (tau, wtau) in inner_nodes.iter().zip(&inner_weights) {
                    let mut p = Vec::with_capacity(dim);
                    p.push(c);
                    p.extend(tau.iter().map(|t| s * t));
                    nodes.push(p);
                    weights.push(wt * wtau);
                }
            }
            (nodes, weights)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(5);
        for k in 0..10 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-13);
        assert!((sphere_area(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn product_rule_weights_sum_to_area() {
        for dim in 2..=5 {
            let r = SphereRule::product(dim, 12);
            let total: f64 = r.weights.iter().sum();
            assert!((total - sphere_area(dim)).abs() < 1e-10, "dim={dim}");
            for p in &r.nodes {
                let n2: f64 = p.iter().map(|x| x * x).sum();
                assert!((n2 - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn product_rule_second_moment() {
        // ∫ σ₁² dσ = |S^{N-1}|/N.
        for dim in 2..=4 {
            let r = SphereRule::product(dim, 16);
            let m2: f64 = r.iter().map(|(s, w)| w * s[0] * s[0]).sum();
            assert!((m2 - sphere_area(dim) / dim as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn graded_rule_handles_log_singularity() {
        // ∫₀¹ log r dr = −1.
        let r = LineRule::graded_from_zero(1.0, 60, 12);
        assert!((r.integrate(f64::ln) + 1.0).abs() < 1e-12);
    }
}
