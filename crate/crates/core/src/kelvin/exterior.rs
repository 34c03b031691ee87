//! The exterior Dirichlet pipeline: transform to the ball, solve, map back
//! and classify the decay of the solution over `Ω_R = B_R ∩ Ω`.

use std::sync::Arc;

use num_complex::Complex64;
use super::ball::{solve_ball_dirichlet, BallSolution, SorOptions};
use super::transform::{transform_data, BoundaryData, TransformedData};
use crate::error::Result;
use crate::growth::{annulus_norm, classify_region, AnalyticField, GrowthProfile, QuadratureSpec, DEFAULT_TOL};
use crate::quadrature::SphereRule;

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub struct ExteriorSolution {
    pub data: TransformedData,
    pub ball: Arc<BallSolution>,
    /// `u(x) = |x|^{2−N} u^K(x/|x|²)` for `|x| ≥ 1`.
    pub field: AnalyticField,
    /// `u^K` by interpolation on the unit ball.
    pub ball_field: AnalyticField,
    /// Growth profile of `u` over `Ω_R` at `q = 1`, `s = 0`.
    pub profile: GrowthProfile,
    /// Fitted exponent negative and the profile consistent with `M_0^{0,1}`.
    pub decay_certified: bool,
}

/// Runs the full pipeline at `res` grid points per axis.
pub fn exterior_solve(data: &BoundaryData, res: usize, quad: &QuadratureSpec) -> Result<ExteriorSolution> {
    let transformed = transform_data(data, quad)?;
    let dim = transformed.dim;
    let src = transformed.source.clone();
    let g = transformed.boundary.clone();
    let ball = Arc::new(solve_ball_dirichlet(dim, &|y| src.eval(y), &|y| g(y), res, &SorOptions::default())?);
    let inner = ball.clone();
    let ball_field = AnalyticField::new(dim, "u^K", move |y| inner.eval(y)).with_r_max(1.0);
    let outer = ball.clone();
    let field = AnalyticField::new(dim, format!("exterior solution (g = {})", data.g_label), move |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let y: Vec<f64> = x.iter().map(|v| v / r2).collect();
        r2.sqrt().powi(2 - dim as i32) * outer.eval(&y)
    });
    let profile = classify_region(&field, 1.0, 0.0, data.domain.inner_radius(), &data.domain.ladder(), quad, DEFAULT_TOL)?;
    let decay_certified = profile.fitted_exponent < 0.0 && profile.consistent_m0;
    Ok(ExteriorSolution { data: transformed, ball, field, ball_field, profile, decay_certified })
}

impl ExteriorSolution {
    /// Max relative error against `exact` on `r_lo ≤ |x| ≤ r_hi`, sampled on
    /// `radii` shells of a product sphere rule.
    pub fn max_relative_error<F: Fn(&[f64]) -> Complex64>(&self, exact: F, r_lo: f64, r_hi: f64, radii: usize) -> f64 {
        let dim = self.field.dim();
        let sphere = SphereRule::product(dim, 12);
        let mut worst = 0.0f64;
        for k in 0..radii {
            let r = r_lo + (r_hi - r_lo) * k as f64 / (radii - 1).max(1) as f64;
            for (sigma, _) in sphere.iter() {
                let x: Vec<f64> = sigma.iter().map(|s| r * s).collect();
                let e = exact(&x);
                worst = worst.max((self.field.eval(&x) - e).norm() / e.norm().max(f64::MIN_POSITIVE));
            }
        }
        worst
    }

    /// Max over shells `r_lo ≤ r ≤ r_hi` of `max|u − exact| / max|exact|`,
    /// both maxima taken on the same shell.
    pub fn shell_relative_error<F: Fn(&[f64]) -> Complex64>(&self, exact: F, r_lo: f64, r_hi: f64, radii: usize) -> f64 {
        let dim = self.field.dim();
        let sphere = SphereRule::product(dim, 12);
        let mut worst = 0.0f64;
        for k in 0..radii {
            let r = r_lo + (r_hi - r_lo) * k as f64 / (radii - 1).max(1) as f64;
            let (mut diff, mut size) = (0.0f64, 0.0f64);
            for (sigma, _) in sphere.iter() {
                let x: Vec<f64> = sigma.iter().map(|s| r * s).collect();
                let e = exact(&x);
                diff = diff.max((self.field.eval(&x) - e).norm());
                size = size.max(e.norm());
            }
            worst = worst.max(diff / size.max(f64::MIN_POSITIVE));
        }
        worst
    }

    /// `∫_{Ω_R}|u| dx` computed directly and through the inversion as
    /// `∫_{1/R<|y|<1} |y|^{−(N+2)} |u^K(y)| dy`.
    pub fn jacobian_identity(&self, radius: f64, quad: &QuadratureSpec) -> Result<(f64, f64)> {
        let dim = self.field.dim();
        let direct = annulus_norm(&self.field, 1.0, 1.0, radius, quad)?;
        let uk = self.ball_field.clone();
        let pulled = AnalyticField::new(dim, "|y|^-(N+2) u^K", move |y| {
            norm(y).powi(-(dim as i32) - 2) * uk.eval(y)
        })
        .with_r_max(1.0);
        let via = annulus_norm(&pulled, 1.0, 1.0 / radius, 1.0, quad)?;
        Ok((direct, via))
    }
}

type RealFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Closed-form exterior solution for catalog data, when one is known:
/// `g = const:c` or `coord:j` with `f = zero` or `f = power:t`.
///
/// The source part is the radial solution `(r^k − r^{2−N}) / (k(k+N−2))`,
/// `k = t + 2`, which vanishes on the unit sphere.
pub fn exterior_oracle(dim: usize, g: &str, f: &str) -> Option<AnalyticField> {
    let (gk, gv) = g.split_once(':').unwrap_or((g, ""));
    let harmonic: RealFn = match gk {
        "const" => {
            let c: f64 = if gv.is_empty() { 1.0 } else { gv.parse().ok()? };
            Arc::new(move |x: &[f64]| c * norm(x).powi(2 - dim as i32))
        }
        "coord" => {
            let j: usize = gv.parse().ok().filter(|&j| j >= 1 && j <= dim)?;
            Arc::new(move |x: &[f64]| x[j - 1] * norm(x).powi(-(dim as i32)))
        }
        _ => return None,
    };
    let (fk, fv) = f.split_once(':').unwrap_or((f, ""));
    let source: Option<f64> = match fk {
        "zero" => None,
        "power" => Some(fv.parse().ok()?),
        _ => return None,
    };
    let denom = source.map(|t| (t + 2.0) * (t + dim as f64));
    if denom.is_some_and(|d| d.abs() < 1e-12) {
        return None;
    }
    Some(AnalyticField::new(dim, format!("exterior oracle (g = {g}, f = {f})"), move |x| {
        let r = norm(x);
        let part = match (source, denom) {
            (Some(t), Some(d)) => (r.powf(t + 2.0) - r.powi(2 - dim as i32)) / d,
            _ => 0.0,
        };
        Complex64::new(harmonic(x) + part, 0.0)
    }))
}
