//! Ellipticity with a certified margin, and the range cone of a symbol.
//!
//! The unit sphere is sampled on a uniform hyperspherical angle grid. With
//! angular spacing `h = π/n` in every angle, each point of the sphere lies
//! within geodesic distance `(N−1)·h/2` of a sample. On the unit ball
//! `|∇ξ^α| ≤ |α|₁ = m`, so `A` is Lipschitz on the sphere with constant
//! `L = m·Σ|a_α|`, and `min_sampled − L·(N−1)h/2 > 0` proves ellipticity.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::operator::ScalarOperator;
use crate::error::{Error, Result};

/// Absolute floor below which a sampled minimum counts as a zero of the symbol.
pub const ELLIPTICITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct EllipticityReport {
    pub elliptic: bool,
    /// Sampled `min_{|σ|=1} |A(σ)|`.
    pub margin: f64,
    pub certified: bool,
    pub samples_used: usize,
    pub lipschitz_bound: f64,
    pub covering_radius: f64,
}

/// Uniform angle grid on `S^{N-1}` with `n` polar steps per half-turn.
/// Returns the points and the covering radius.
pub fn angle_grid(dim: usize, n: usize) -> (Vec<Vec<f64>>, f64) {
    assert!(dim >= 1 && n >= 1);
    let h = PI / n as f64;
    if dim == 1 {
        return (vec![vec![1.0], vec![-1.0]], 0.0);
    }
    // Build from the innermost circle outwards: σ = (cos θ, sin θ · τ).
    let mut points: Vec<Vec<f64>> = (0..2 * n)
        .map(|k| {
            let t = k as f64 * h;
            vec![t.cos(), t.sin()]
        })
        .collect();
    for _ in 3..=dim {
        let mut next = Vec::with_capacity(points.len() * (n + 1));
        for i in 0..=n {
            let theta = i as f64 * h;
            let (s, c) = theta.sin_cos();
            if i == 0 || i == n {
                // Poles: the inner sphere collapses to a single point.
                let mut p = vec![c];
                p.extend(std::iter::repeat_n(0.0, points[0].len()));
                next.push(p);
                continue;
            }
            for tau in &points {
                let mut p = Vec::with_capacity(tau.len() + 1);
                p.push(c);
                p.extend(tau.iter().map(|t| s * t));
                next.push(p);
            }
        }
        points = next;
    }
    let covering = (dim - 1) as f64 * h / 2.0;
    (points, covering)
}

/// Lipschitz constant of `A` restricted to the closed unit ball.
pub fn lipschitz_bound(op: &ScalarOperator) -> f64 {
    op.order().unwrap_or(0) as f64 * op.coeff_l1()
}

/// Samples `|A(σ)|` on the sphere and certifies positivity when possible.
pub fn check_ellipticity(op: &ScalarOperator, refinement: usize) -> Result<EllipticityReport> {
    if op.is_zero() {
        return Err(Error::InvalidInput("zero operator has no ellipticity".into()));
    }
    let refinement = refinement.max(2);
    let (points, covering) = angle_grid(op.dim(), refinement);
    let margin = points
        .iter()
        .map(|s| op.symbol_unchecked(s).norm())
        .fold(f64::INFINITY, f64::min);
    let lipschitz = lipschitz_bound(op);
    let scale = op.coeff_l1().max(1.0);
    let elliptic = margin > ELLIPTICITY_TOL * scale;
    let certified = elliptic && margin - lipschitz * covering > 0.0;
    Ok(EllipticityReport {
        elliptic,
        margin,
        certified,
        samples_used: points.len(),
        lipschitz_bound: lipschitz,
        covering_radius: covering,
    })
}

/// The range `{A(ξ)}` of a homogeneous symbol is the cone spanned by the
/// sampled arguments; a spectral shift `z ∉ range` exists iff the arguments
/// leave a gap.
#[derive(Clone, Debug, Serialize)]
pub struct ResolventCone {
    /// Covered argument arcs `[start, end]` in radians, `start ∈ [0, 2π)`.
    pub covered_arcs: Vec<(f64, f64)>,
    pub largest_gap: f64,
    pub exists_spectral_shift: bool,
    /// A point outside the range cone when one exists.
    pub witness: Option<(f64, f64)>,
}

pub fn resolvent_cone(op: &ScalarOperator, refinement: usize) -> Result<ResolventCone> {
    let report = check_ellipticity(op, refinement)?;
    if !report.elliptic {
        return Err(Error::Precondition("resolvent cone requires an elliptic operator".into()));
    }
    let (points, covering) = angle_grid(op.dim(), refinement.max(2));
    let mut args: Vec<f64> = points
        .iter()
        .map(|s| op.symbol_unchecked(s).arg().rem_euclid(2.0 * PI))
        .collect();
    args.sort_by(f64::total_cmp);
    args.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

    // Between neighbouring samples the argument moves by at most
    // asin(L·δ/margin) ≤ (π/2)·L·δ/margin for chord length δ ≤ 2·covering.
    let step_bound = (PI / 2.0) * report.lipschitz_bound * 2.0 * covering / report.margin;
    let threshold = (2.0 * step_bound).max(1e-9);

    let mut gaps: Vec<(f64, f64, f64)> = Vec::new(); // (start, end, width)
    for w in args.windows(2) {
        gaps.push((w[0], w[1], w[1] - w[0]));
    }
    let first = args[0];
    let last = *args.last().unwrap();
    gaps.push((last, first + 2.0 * PI, first + 2.0 * PI - last));

    let real_gaps: Vec<_> = gaps.iter().filter(|g| g.2 > threshold).copied().collect();
    let largest = gaps.iter().map(|g| g.2).fold(0.0, f64::max);
    let exists = !real_gaps.is_empty();

    let mut arcs = Vec::new();
    if exists {
        // Arcs run from the end of one real gap to the start of the next.
        let mut sorted = real_gaps.clone();
        sorted.sort_by(|a, b| a.1.rem_euclid(2.0 * PI).total_cmp(&b.1.rem_euclid(2.0 * PI)));
        for (i, g) in sorted.iter().enumerate() {
            let next = &sorted[(i + 1) % sorted.len()];
            let start = g.1.rem_euclid(2.0 * PI);
            let mut end = next.0;
            if end < start {
                end += 2.0 * PI;
            }
            arcs.push((start, end));
        }
    } else {
        arcs.push((0.0, 2.0 * PI));
    }
    let witness = real_gaps
        .iter()
        .max_by(|a, b| a.2.total_cmp(&b.2))
        .map(|g| {
            let mid = 0.5 * (g.0 + g.1);
            let z = Complex64::from_polar(1.0, mid);
            (z.re, z.im)
        });
    Ok(ResolventCone {
        covered_arcs: arcs,
        largest_gap: largest,
        exists_spectral_shift: exists,
        witness,
    })
}
