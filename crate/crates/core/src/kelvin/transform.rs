//! The inversion `x ↦ x/|x|²`, the Kelvin transform and the transformed
//! exterior Dirichlet data.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::growth::checks::plateaus;
use crate::growth::{ladder_norms, AnalyticField, QuadratureSpec, RadiusLadder, DEFAULT_TOL};

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `y = x/|x|²`.
pub fn invert_point(x: &[f64]) -> Result<Vec<f64>> {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    if r2 == 0.0 {
        return Err(Error::InvalidInput("inversion is undefined at the origin".into()));
    }
    Ok(x.iter().map(|v| v / r2).collect())
}

fn require_dim(dim: usize) -> Result<()> {
    if dim < 3 {
        return Err(Error::InvalidInput(format!("Kelvin transform needs N ≥ 3, got {dim}")));
    }
    Ok(())
}

/// `h^K(y) = |y|^{2−N} h(y/|y|²)`; the evaluator returns NaN at `y = 0`.
pub fn kelvin_transform(h: &AnalyticField) -> Result<AnalyticField> {
    let dim = h.dim();
    require_dim(dim)?;
    let inner = h.clone();
    Ok(AnalyticField::new(dim, format!("K[{}]", h.label()), move |y| {
        let r2: f64 = y.iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        let x: Vec<f64> = y.iter().map(|v| v / r2).collect();
        r2.sqrt().powi(2 - dim as i32) * inner.eval(&x)
    }))
}

/// The exterior `Ω = {|x| > 1}` of the closed unit ball.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExteriorDomain {
    pub dim: usize,
}

impl ExteriorDomain {
    pub fn new(dim: usize) -> Result<Self> {
        require_dim(dim)?;
        Ok(Self { dim })
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        norm(x) > 1.0
    }

    /// Radius of the hole; `Ω_R = B_R ∩ Ω` is the annulus `1 < |x| < R`.
    pub fn inner_radius(&self) -> f64 {
        1.0
    }

    /// Default ladder for profiles over `Ω_R`.
    pub fn ladder(&self) -> RadiusLadder {
        RadiusLadder { r0: 1.5, gamma: 1.5, count: 16 }
    }
}

pub type BoundaryFn = Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>;

/// Dirichlet data `g` on the unit sphere and source `f` on `Ω`.
#[derive(Clone)]
pub struct BoundaryData {
    pub domain: ExteriorDomain,
    pub g: BoundaryFn,
    pub g_label: String,
    pub f: AnalyticField,
    pub q: f64,
}

impl std::fmt::Debug for BoundaryData {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("BoundaryData")
            .field("dim", &self.domain.dim)
            .field("g", &self.g_label)
            .field("f", &self.f.label())
            .field("q", &self.q)
            .finish()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightCheck {
    /// `‖|x|^{N+2−2N/q} f‖_{q,Ω_R}` per rung.
    pub rung_values: Vec<f64>,
    pub finite: bool,
}

impl BoundaryData {
    pub fn new<G>(dim: usize, g_label: impl Into<String>, g: G, f: AnalyticField, q: f64) -> Result<Self>
    where
        G: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        let domain = ExteriorDomain::new(dim)?;
        if f.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: f.dim() });
        }
        if q < 1.0 || q.is_infinite() {
            return Err(Error::InvalidInput(format!("weight exponent q = {q} must lie in [1, ∞)")));
        }
        Ok(Self { domain, g: Arc::new(g), g_label: g_label.into(), f, q })
    }

    /// `g` from `const:c` or `coord:j` (one-based), `f` from `zero` or
    /// `power:t` (`|x|^t`).
    pub fn parse(dim: usize, g: &str, f: &str, q: f64) -> Result<Self> {
        let bad = |s: &str| Error::UnknownName(format!("boundary/source spec '{s}'"));
        let (gk, gv) = g.split_once(':').unwrap_or((g, ""));
        let data_g: BoundaryFn = match gk {
            "const" => {
                let c: f64 = if gv.is_empty() { 1.0 } else { gv.parse().map_err(|_| bad(g))? };
                Arc::new(move |_| Complex64::new(c, 0.0))
            }
            "coord" => {
                let j: usize = gv.parse().map_err(|_| bad(g))?;
                if j == 0 || j > dim {
                    return Err(bad(g));
                }
                Arc::new(move |x| Complex64::new(x[j - 1], 0.0))
            }
            _ => return Err(bad(g)),
        };
        let (fk, fv) = f.split_once(':').unwrap_or((f, ""));
        let field = match fk {
            "zero" => AnalyticField::constant(dim, 0.0),
            "power" => AnalyticField::power(dim, fv.parse().map_err(|_| bad(f))?),
            _ => return Err(bad(f)),
        };
        let mut data = Self::new(dim, g, |_| Complex64::default(), field, q)?;
        data.g = data_g;
        Ok(data)
    }

    /// Estimates whether `|x|^{N+2−2N/q} f ∈ L^q(Ω)` by the plateau of
    /// cumulative annulus integrals.
    pub fn weight_check(&self, quad: &QuadratureSpec) -> Result<WeightCheck> {
        let dim = self.domain.dim;
        let e = dim as f64 + 2.0 - 2.0 * dim as f64 / self.q;
        let f = self.f.clone();
        let weighted = AnalyticField::new(dim, "weighted source", move |x| norm(x).powf(e) * f.eval(x));
        let ladder = self.domain.ladder();
        let values = ladder_norms(&weighted, self.q, self.domain.inner_radius(), &ladder, quad)?;
        let finite = plateaus(&values, &ladder.radii(), self.q, DEFAULT_TOL);
        Ok(WeightCheck { rung_values: values, finite })
    }
}

/// Data of the bounded problem `Δu^K = |y|^{−4} f^K` in `B_1`,
/// `u^K = g` on the sphere.
#[derive(Clone)]
pub struct TransformedData {
    pub dim: usize,
    /// `|y|^{−4} f^K(y) = |y|^{−N−2} f(y/|y|²)`, NaN at `y = 0`.
    pub source: AnalyticField,
    pub boundary: BoundaryFn,
    pub q: f64,
}

/// Maps exterior data to the ball after checking the weighted
/// integrability hypothesis on `f`.
pub fn transform_data(data: &BoundaryData, quad: &QuadratureSpec) -> Result<TransformedData> {
    let check = data.weight_check(quad)?;
    if !check.finite {
        return Err(Error::Precondition(format!(
            "source violates the exterior solvability hypothesis |x|^(N+2-2N/q) f ∈ L^q(Ω) for q = {}",
            data.q
        )));
    }
    Ok(transform_unchecked(data))
}

pub(crate) fn transform_unchecked(data: &BoundaryData) -> TransformedData {
    let dim = data.domain.dim;
    let f = data.f.clone();
    let source = AnalyticField::new(dim, format!("|y|^-4 K[{}]", data.f.label()), move |y| {
        let r2: f64 = y.iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        let x: Vec<f64> = y.iter().map(|v| v / r2).collect();
        r2.sqrt().powi(-(dim as i32) - 2) * f.eval(&x)
    })
    .with_r_max(1.0);
    TransformedData { dim, source, boundary: data.g.clone(), q: data.q }
}
