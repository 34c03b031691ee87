//! Quadrature estimates of `‖u‖_{q,B_R}`, `M^{s,q}` norms on ladders and
//! weighted `L_s^q` norms.

use serde::{Deserialize, Serialize};

use super::field::AnalyticField;
use super::ladder::RadiusLadder;
use crate::error::{Error, Result};
use crate::quadrature::{LineRule, SphereRule, SphereRuleKind};

/// Node budget for radial and angular quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Gauss–Legendre nodes per radial panel.
    pub radial_order: usize,
    /// Panels per factor 1.5 of radius.
    pub panels_per_rung: usize,
    /// Dyadic panels between 0 and the core radius.
    pub core_levels: usize,
    pub sphere: SphereRuleKind,
    /// Angular resolution passed to [`SphereRule::with_kind`].
    pub angular: usize,
}

impl QuadratureSpec {
    pub const MIN_RADIAL_ORDER: usize = 4;

    /// Product angles in `N = 2, 3`, seeded Monte-Carlo above.
    pub fn for_dim(dim: usize) -> Self {
        let (sphere, angular) = match dim {
            1 => (SphereRuleKind::ProductAngles, 1),
            2 => (SphereRuleKind::ProductAngles, 64),
            3 => (SphereRuleKind::ProductAngles, 24),
            _ => (SphereRuleKind::MonteCarlo { seed: 0x5eed }, 12),
        };
        Self { radial_order: 12, panels_per_rung: 2, core_levels: 30, sphere, angular }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial_order < Self::MIN_RADIAL_ORDER || self.panels_per_rung == 0 {
            return Err(Error::InvalidInput("radial node count below minimum".into()));
        }
        if self.angular == 0 {
            return Err(Error::InvalidInput("angular node count below minimum".into()));
        }
        Ok(())
    }

    pub fn sphere_rule(&self, dim: usize) -> SphereRule {
        SphereRule::with_kind(dim, self.angular, self.sphere)
    }

    /// Radial rule on `[a, b]`: dyadic grading toward 0 when `a = 0`,
    /// geometric panels otherwise.
    pub fn radial_rule(&self, a: f64, b: f64) -> LineRule {
        let core = 1.0f64;
        if a <= 0.0 {
            let mut rule = LineRule::graded_from_zero(b.min(core), self.core_levels, self.radial_order);
            if b > core {
                let outer = self.radial_rule(core, b);
                rule.nodes.extend(outer.nodes);
                rule.weights.extend(outer.weights);
            }
            return rule;
        }
        let panels =
            ((self.panels_per_rung as f64) * (b / a).ln() / 1.5f64.ln()).ceil().max(1.0) as usize;
        let mut rule = LineRule::default();
        let ratio = (b / a).powf(1.0 / panels as f64);
        let mut lo = a;
        for p in 0..panels {
            let hi = if p + 1 == panels { b } else { lo * ratio };
            let piece = LineRule::composite(lo, hi, 1, self.radial_order);
            rule.nodes.extend(piece.nodes);
            rule.weights.extend(piece.weights);
            lo = hi;
        }
        rule
    }
}

/// `1 ≤ q ≤ ∞`.
pub(crate) fn check_q(q: f64) -> Result<()> {
    if q >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("exponent q = {q} must lie in [1, ∞]")))
    }
}

/// `∫_{a<|x|<b} |w(x)·u(x)|^q dx` (or the node maximum when `q = ∞`),
/// with `w` a radial weight.
fn shell_power(
    u: &AnalyticField,
    weight: &dyn Fn(f64) -> f64,
    q: f64,
    a: f64,
    b: f64,
    quad: &QuadratureSpec,
    sphere: &SphereRule,
) -> f64 {
    let dim = u.dim();
    let rule = quad.radial_rule(a, b);
    let mut x = vec![0.0; dim];
    let mut point = |r: f64, sigma: &[f64]| {
        for (xi, si) in x.iter_mut().zip(sigma) {
            *xi = r * si;
        }
        weight(r) * u.eval(&x).norm()
    };
    if q.is_infinite() {
        let mut best = 0.0f64;
        for &r in rule.nodes.iter().chain(std::iter::once(&b)) {
            for (sigma, _) in sphere.iter() {
                best = best.max(point(r, sigma));
            }
        }
        return best;
    }
    let mut total = 0.0;
    for (&r, &wr) in rule.nodes.iter().zip(&rule.weights) {
        let jac = wr * r.powi(dim as i32 - 1);
        let mut shell = 0.0;
        for (sigma, ws) in sphere.iter() {
            shell += ws * point(r, sigma).powf(q);
        }
        total += jac * shell;
    }
    total
}

fn finish(acc: f64, q: f64) -> f64 {
    if q.is_infinite() {
        acc
    } else {
        acc.powf(1.0 / q)
    }
}

fn combine(acc: f64, piece: f64, q: f64) -> f64 {
    if q.is_infinite() {
        acc.max(piece)
    } else {
        acc + piece
    }
}

fn check_domain(u: &AnalyticField, r: f64) -> Result<()> {
    if r > u.r_max() {
        return Err(Error::InvalidInput(format!(
            "radius {r} exceeds the declared domain radius {} of '{}'",
            u.r_max(),
            u.label()
        )));
    }
    Ok(())
}

/// Quadrature estimate of `‖u‖_{q,B_R}`.
pub fn ball_norm(u: &AnalyticField, q: f64, radius: f64, quad: &QuadratureSpec) -> Result<f64> {
    annulus_norm(u, q, 0.0, radius, quad)
}

/// `‖u‖_{q, {a<|x|<b}}`.
pub fn annulus_norm(u: &AnalyticField, q: f64, a: f64, b: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_q(q)?;
    quad.validate()?;
    check_domain(u, b)?;
    if !(b > a && a >= 0.0) {
        return Err(Error::InvalidInput(format!("empty shell ({a}, {b})")));
    }
    let sphere = quad.sphere_rule(u.dim());
    Ok(finish(shell_power(u, &|_| 1.0, q, a, b, quad, &sphere), q))
}

/// `‖u‖_{q, {inner<|x|<R_k}}` for every rung (`inner = 0` gives balls).
pub fn ladder_norms(
    u: &AnalyticField,
    q: f64,
    inner: f64,
    ladder: &RadiusLadder,
    quad: &QuadratureSpec,
) -> Result<Vec<f64>> {
    weighted_ladder(u, &|_| 1.0, q, inner, ladder, quad)
}

fn weighted_ladder(
    u: &AnalyticField,
    weight: &dyn Fn(f64) -> f64,
    q: f64,
    inner: f64,
    ladder: &RadiusLadder,
    quad: &QuadratureSpec,
) -> Result<Vec<f64>> {
    check_q(q)?;
    quad.validate()?;
    check_domain(u, ladder.r_max())?;
    if ladder.r0 <= inner {
        return Err(Error::InvalidInput(format!(
            "first rung {} must exceed the inner radius {inner}",
            ladder.r0
        )));
    }
    let sphere = quad.sphere_rule(u.dim());
    let mut acc = 0.0;
    let mut lo = inner;
    let mut out = Vec::with_capacity(ladder.count);
    for r in ladder.radii() {
        acc = combine(acc, shell_power(u, weight, q, lo, r, quad, &sphere), q);
        out.push(finish(acc, q));
        lo = r;
    }
    Ok(out)
}

/// `R^{−s−N/q}` applied to each rung norm.
pub fn normalize(norms: &[f64], radii: &[f64], s: f64, q: f64, dim: usize) -> Vec<f64> {
    let e = s + dim as f64 / q;
    norms.iter().zip(radii).map(|(n, r)| n * r.powf(-e)).collect()
}

/// Ladder lower bound of `sup_{R≥1} R^{−s−N/q}‖u‖_{q,B_R}`.
pub fn m_norm(u: &AnalyticField, s: f64, q: f64, ladder: &RadiusLadder, quad: &QuadratureSpec) -> Result<f64> {
    if ladder.r0 < 1.0 {
        return Err(Error::InvalidInput("M norm ladders start at R ≥ 1".into()));
    }
    let norms = ladder_norms(u, q, 0.0, ladder, quad)?;
    let normalized = normalize(&norms, &ladder.radii(), s, q, u.dim());
    Ok(normalized.into_iter().fold(0.0, f64::max))
}

fn lq_weight(s: f64, q: f64, dim: usize) -> impl Fn(f64) -> f64 {
    let e = -s - dim as f64 / q;
    move |r| (1.0 + r).powf(e)
}

/// `‖(1+|x|)^{−s−N/q} u‖_{q,B_{R_max}}`.
pub fn weighted_norm(u: &AnalyticField, s: f64, q: f64, quad: &QuadratureSpec, r_max: f64) -> Result<f64> {
    check_q(q)?;
    quad.validate()?;
    check_domain(u, r_max)?;
    let sphere = quad.sphere_rule(u.dim());
    let w = lq_weight(s, q, u.dim());
    Ok(finish(shell_power(u, &w, q, 0.0, r_max, quad, &sphere), q))
}

/// [`weighted_norm`] at every rung radius.
pub fn weighted_norm_ladder(
    u: &AnalyticField,
    s: f64,
    q: f64,
    ladder: &RadiusLadder,
    quad: &QuadratureSpec,
) -> Result<Vec<f64>> {
    let w = lq_weight(s, q, u.dim());
    weighted_ladder(u, &w, q, 0.0, ladder, quad)
}
