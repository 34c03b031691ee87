//! Point-evaluable fields on `ℝ^N` with optional gradients.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::poly::Polynomial;

pub type Evaluator = Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>;
pub type GradientEvaluator = Arc<dyn Fn(&[f64]) -> Vec<Complex64> + Send + Sync>;

/// A field `u: ℝ^N → ℂ` given by a stateless evaluator.
#[derive(Clone)]
pub struct AnalyticField {
    dim: usize,
    label: String,
    /// Largest radius on which the evaluator is declared valid.
    r_max: f64,
    eval: Evaluator,
    gradient: Option<GradientEvaluator>,
}

impl fmt::Debug for AnalyticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticField")
            .field("dim", &self.dim)
            .field("label", &self.label)
            .field("r_max", &self.r_max)
            .field("has_gradient", &self.gradient.is_some())
            .finish()
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// `C^∞` step: 0 for `τ ≤ 0`, 1 for `τ ≥ 1`. Returns `(s, s')`.
pub fn smooth_step(tau: f64) -> (f64, f64) {
    if tau <= 0.0 {
        return (0.0, 0.0);
    }
    if tau >= 1.0 {
        return (1.0, 0.0);
    }
    let f = |t: f64| (-1.0 / t).exp();
    let df = |t: f64| (-1.0 / t).exp() / (t * t);
    let (a, b) = (f(tau), f(1.0 - tau));
    let s = a / (a + b);
    let ds = (df(tau) * b + a * df(1.0 - tau)) / ((a + b) * (a + b));
    (s, ds)
}

impl AnalyticField {
    pub fn new<F>(dim: usize, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        Self { dim, label: label.into(), r_max: f64::INFINITY, eval: Arc::new(f), gradient: None }
    }

    pub fn with_gradient<G>(mut self, g: G) -> Self
    where
        G: Fn(&[f64]) -> Vec<Complex64> + Send + Sync + 'static,
    {
        self.gradient = Some(Arc::new(g));
        self
    }

    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_max = r_max;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        (self.eval)(x)
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    pub fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        self.gradient.as_ref().map(|g| g(x))
    }

    /// The scalar field `|∇u|`, when a gradient is available.
    pub fn gradient_magnitude(&self) -> Option<AnalyticField> {
        let g = self.gradient.clone()?;
        Some(
            AnalyticField::new(self.dim, format!("|grad {}|", self.label), move |x| {
                real(g(x).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
            })
            .with_r_max(self.r_max),
        )
    }

    pub fn product(&self, other: &AnalyticField) -> AnalyticField {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        AnalyticField::new(self.dim, format!("({})*({})", self.label, other.label), move |x| {
            a(x) * b(x)
        })
        .with_r_max(self.r_max.min(other.r_max))
    }

    pub fn sum(&self, other: &AnalyticField) -> AnalyticField {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        AnalyticField::new(self.dim, format!("({})+({})", self.label, other.label), move |x| {
            a(x) + b(x)
        })
        .with_r_max(self.r_max.min(other.r_max))
    }

    pub fn scaled(&self, c: Complex64) -> AnalyticField {
        let a = self.eval.clone();
        AnalyticField::new(self.dim, format!("{c}*({})", self.label), move |x| c * a(x))
            .with_r_max(self.r_max)
    }

    /// Constant field.
    pub fn constant(dim: usize, c: f64) -> Self {
        Self::new(dim, format!("const {c}"), move |_| real(c))
            .with_gradient(move |x| vec![Complex64::default(); x.len()])
    }

    /// `|x|^t`, singular at 0 for `t < 0`.
    pub fn power(dim: usize, t: f64) -> Self {
        Self::new(dim, format!("|x|^{t}"), move |x| real(norm(x).powf(t))).with_gradient(
            move |x| {
                let r = norm(x);
                let d = t * r.powf(t - 2.0);
                x.iter().map(|&xi| real(d * xi)).collect()
            },
        )
    }

    /// `|x|^t` for `|x| ≥ r0`, spliced smoothly to the constant `(r0/2)^t`
    /// on `B_{r0/2}`.
    pub fn smoothed_power(dim: usize, t: f64, r0: f64) -> Self {
        let half = 0.5 * r0;
        let c = half.powf(t);
        let profile = move |r: f64| -> (f64, f64) {
            if r >= r0 {
                return (r.powf(t), t * r.powf(t - 1.0));
            }
            if r <= half {
                return (c, 0.0);
            }
            let (s, ds) = smooth_step((r - half) / half);
            let p = r.powf(t);
            (s * p + (1.0 - s) * c, ds / half * (p - c) + s * t * r.powf(t - 1.0))
        };
        Self::new(dim, format!("smoothed |x|^{t} (r0={r0})"), move |x| real(profile(norm(x)).0))
            .with_gradient(move |x| {
                let r = norm(x);
                if r == 0.0 {
                    return vec![Complex64::default(); x.len()];
                }
                let d = profile(r).1 / r;
                x.iter().map(|&xi| real(d * xi)).collect()
            })
    }

    /// `(1+|x|)^a`.
    pub fn one_plus_r_power(dim: usize, a: f64) -> Self {
        Self::new(dim, format!("(1+|x|)^{a}"), move |x| real((1.0 + norm(x)).powf(a)))
            .with_gradient(move |x| {
                let r = norm(x);
                if r == 0.0 {
                    return vec![Complex64::default(); x.len()];
                }
                let d = a * (1.0 + r).powf(a - 1.0) / r;
                x.iter().map(|&xi| real(d * xi)).collect()
            })
    }

    /// `log(1 + |x|²)/2`, a smooth field growing like `log|x|`.
    pub fn log_growth(dim: usize) -> Self {
        Self::new(dim, "log(1+|x|^2)/2", |x| real(0.5 * (1.0 + norm(x).powi(2)).ln()))
            .with_gradient(|x| {
                let d = 1.0 / (1.0 + norm(x).powi(2));
                x.iter().map(|&xi| real(d * xi)).collect()
            })
    }

    /// `g_n(x) = (1+|x|²)^{−N/2} e^{i|x|^{2n}}`.
    pub fn oscillatory(dim: usize, n: u32) -> Self {
        let nd = dim as f64;
        Self::new(dim, format!("oscillatory n={n}"), move |x| {
            let r2 = norm(x).powi(2);
            Complex64::from_polar((1.0 + r2).powf(-nd / 2.0), r2.powi(n as i32))
        })
    }

    pub fn polynomial(p: &Polynomial) -> Self {
        let (a, b) = (p.clone(), p.clone());
        Self::new(p.dim(), format!("poly deg {}", p.degree()), move |x| a.eval(x))
            .with_gradient(move |x| b.gradient(x))
    }

    /// The coordinate field `x_j` (zero-based).
    pub fn coordinate(dim: usize, j: usize) -> Self {
        Self::new(dim, format!("x{}", j + 1), move |x| real(x[j])).with_gradient(move |x| {
            let mut g = vec![Complex64::default(); x.len()];
            g[j] = real(1.0);
            g
        })
    }
}

/// Names accepted by [`AnalyticField::from_catalog`].
pub const FIELD_NAMES: [&str; 7] = [
    "const",
    "monomial",
    "power t",
    "log",
    "smoothed_power t r0",
    "one_plus_r a",
    "oscillatory n",
];

impl AnalyticField {
    /// Parses catalog entries such as `power 0.5`, `smoothed_power:-1,0.5`
    /// or `monomial 2,0,1`.
    pub fn from_catalog(spec: &str, dim: usize) -> crate::Result<Self> {
        use crate::error::Error;
        let normalized = spec.replacen(':', " ", 1);
        let mut parts = normalized.split_whitespace();
        let name = parts.next().unwrap_or("");
        let args: Vec<&str> = if name == "monomial" {
            parts.collect()
        } else {
            parts.flat_map(|p| p.split(',')).filter(|p| !p.is_empty()).collect()
        };
        let bad = || Error::UnknownName(format!("field '{spec}'"));
        let num = |i: usize| -> crate::Result<f64> {
            args.get(i).and_then(|a| a.parse().ok()).ok_or_else(bad)
        };
        let field = match name {
            "const" => Self::constant(dim, if args.is_empty() { 1.0 } else { num(0)? }),
            "monomial" => {
                let exps: Vec<u32> = match args.first() {
                    None => {
                        let mut e = vec![0; dim];
                        e[0] = 1;
                        e
                    }
                    Some(a) => a.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<crate::Result<_>>()?,
                };
                let alpha = crate::symbol::MultiIndex::new(exps)?;
                if alpha.dim() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: alpha.dim() });
                }
                Self::polynomial(&Polynomial::monomial(alpha, real(1.0)))
            }
            "power" => Self::power(dim, num(0)?),
            "log" => Self::log_growth(dim),
            "smoothed_power" => Self::smoothed_power(dim, num(0)?, if args.len() > 1 { num(1)? } else { 0.5 }),
            "one_plus_r" => Self::one_plus_r_power(dim, num(0)?),
            "oscillatory" => Self::oscillatory(dim, num(0)? as u32),
            _ => return Err(bad()),
        };
        Ok(field)
    }
}
