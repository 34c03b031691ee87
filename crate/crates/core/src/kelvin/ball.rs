//! Second-order finite differences for `Δu = F` in the unit ball with
//! Dirichlet data, using Shortley–Weller stencils at cut cells and SOR.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Nodes closer than this to the sphere are treated as boundary nodes.
pub const BOUNDARY_SNAP: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SorOptions {
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for SorOptions {
    fn default() -> Self {
        Self { tol: 1e-12, max_sweeps: 50_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Interior,
    Boundary,
    Exterior,
}

/// How a non-finite source value at a node was replaced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceFill {
    /// Source finite at every node.
    None,
    /// Continuous limit from nearby points.
    Limit,
    /// Average of neighbouring node values.
    NeighborAverage,
}

#[derive(Clone, Debug, Serialize)]
pub struct BallDiagnostics {
    pub unknowns: usize,
    pub sweeps: usize,
    pub omega: f64,
    pub last_update: f64,
    /// Max over interior nodes of `|L_h u − F|`.
    pub residual: f64,
    pub source_fill: SourceFill,
}

/// Grid solution on `[−1,1]^N`; nodes outside the ball carry the boundary
/// value at their radial projection so interpolation near the sphere is
/// well defined.
#[derive(Clone, Debug)]
pub struct BallSolution {
    pub dim: usize,
    pub res: usize,
    pub h: f64,
    pub values: Vec<Complex64>,
    pub kinds: Vec<NodeKind>,
    pub diagnostics: BallDiagnostics,
}

fn coords(idx: usize, dim: usize, res: usize, h: f64, out: &mut [f64]) {
    let mut rest = idx;
    for d in (0..dim).rev() {
        out[d] = -1.0 + (rest % res) as f64 * h;
        rest /= res;
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn project(x: &[f64]) -> Vec<f64> {
    let r = norm(x);
    if r == 0.0 {
        let mut e = vec![0.0; x.len()];
        e[0] = 1.0;
        return e;
    }
    x.iter().map(|v| v / r).collect()
}

enum Arm {
    Unknown(usize, f64),
    Known(Complex64, f64),
}

struct Row {
    diag: f64,
    rhs: Complex64,
    neighbors: Vec<(usize, f64)>,
}

impl BallSolution {
    pub fn node_coords(&self, idx: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.dim];
        coords(idx, self.dim, self.res, self.h, &mut x);
        x
    }

    /// Multilinear interpolation; points outside `[−1,1]^N` are clamped.
    pub fn eval(&self, y: &[f64]) -> Complex64 {
        let mut base = vec![0usize; self.dim];
        let mut frac = vec![0.0; self.dim];
        for d in 0..self.dim {
            let t = ((y[d] + 1.0) / self.h).clamp(0.0, (self.res - 1) as f64);
            let i = (t.floor() as usize).min(self.res - 2);
            base[d] = i;
            frac[d] = t - i as f64;
        }
        let mut total = Complex64::default();
        for corner in 0..(1usize << self.dim) {
            let mut w = 1.0;
            let mut idx = 0;
            for d in 0..self.dim {
                let bit = (corner >> d) & 1;
                w *= if bit == 1 { frac[d] } else { 1.0 - frac[d] };
                idx = idx * self.res + base[d] + bit;
            }
            if w != 0.0 {
                total += w * self.values[idx];
            }
        }
        total
    }

    /// Max `|u − exact|` over interior nodes.
    pub fn max_error<F: Fn(&[f64]) -> Complex64>(&self, exact: F) -> f64 {
        let mut x = vec![0.0; self.dim];
        let mut err = 0.0f64;
        for (i, k) in self.kinds.iter().enumerate() {
            if *k == NodeKind::Interior {
                coords(i, self.dim, self.res, self.h, &mut x);
                err = err.max((self.values[i] - exact(&x)).norm());
            }
        }
        err
    }
}

/// Replaces non-finite source samples by a continuous limit when the
/// source approaches one, else by the mean of finite neighbouring samples.
fn fill_source(
    source: &dyn Fn(&[f64]) -> Complex64,
    values: &mut [Complex64],
    dim: usize,
    res: usize,
    h: f64,
) -> SourceFill {
    let mut fill = SourceFill::None;
    let mut x = vec![0.0; dim];
    for i in 0..values.len() {
        if values[i].re.is_finite() && values[i].im.is_finite() {
            continue;
        }
        coords(i, dim, res, h, &mut x);
        let eps = 1e-6 * h;
        let probes: Vec<Complex64> = (0..dim)
            .flat_map(|d| [-1.0, 1.0].map(|s| (d, s)))
            .map(|(d, s)| {
                let mut p = x.clone();
                p[d] += s * eps;
                source(&p)
            })
            .collect();
        let finite = probes.iter().all(|v| v.re.is_finite() && v.im.is_finite());
        let mean = probes.iter().sum::<Complex64>() / probes.len() as f64;
        let spread = probes.iter().map(|v| (v - mean).norm()).fold(0.0, f64::max);
        if finite && spread <= 1e-6 * mean.norm().max(1.0) {
            values[i] = mean;
            fill = SourceFill::Limit;
            continue;
        }
        let mut acc = Complex64::default();
        let mut count = 0;
        for d in 0..dim {
            let stride = res.pow((dim - 1 - d) as u32);
            let pos = (i / stride) % res;
            for (ok, j) in [(pos > 0, i.wrapping_sub(stride)), (pos + 1 < res, i + stride)] {
                if ok && values[j].re.is_finite() && values[j].im.is_finite() {
                    acc += values[j];
                    count += 1;
                }
            }
        }
        values[i] = if count > 0 { acc / count as f64 } else { Complex64::default() };
        fill = SourceFill::NeighborAverage;
    }
    fill
}

/// Solves `Δu = F` in `B_1`, `u = g` on `∂B_1`, on `res` points per axis
/// (odd `res`, so the centre is a node).
pub fn solve_ball_dirichlet(
    dim: usize,
    source: &dyn Fn(&[f64]) -> Complex64,
    g: &dyn Fn(&[f64]) -> Complex64,
    res: usize,
    opts: &SorOptions,
) -> Result<BallSolution> {
    if !(2..=3).contains(&dim) {
        return Err(Error::InvalidInput(format!("ball solver supports N = 2, 3; got {dim}")));
    }
    if res < 5 || res % 2 == 0 {
        return Err(Error::InvalidInput(format!("resolution {res} must be odd and at least 5")));
    }
    let h = 2.0 / (res - 1) as f64;
    let total = res.pow(dim as u32);
    let mut x = vec![0.0; dim];
    let mut kinds = Vec::with_capacity(total);
    let mut values = vec![Complex64::default(); total];
    let mut unknown_of = vec![usize::MAX; total];
    let mut unknown_nodes = Vec::new();
    for i in 0..total {
        coords(i, dim, res, h, &mut x);
        let r = norm(&x);
        let kind = if (1.0 - r).abs() < BOUNDARY_SNAP {
            NodeKind::Boundary
        } else if r < 1.0 {
            NodeKind::Interior
        } else {
            NodeKind::Exterior
        };
        if kind == NodeKind::Interior {
            unknown_of[i] = unknown_nodes.len();
            unknown_nodes.push(i);
        } else {
            values[i] = g(&project(&x));
        }
        kinds.push(kind);
    }

    let mut rhs_values: Vec<Complex64> = (0..total)
        .map(|i| {
            if kinds[i] == NodeKind::Interior {
                coords(i, dim, res, h, &mut x);
                source(&x)
            } else {
                Complex64::default()
            }
        })
        .collect();
    let source_fill = fill_source(source, &mut rhs_values, dim, res, h);

    let mut rows = Vec::with_capacity(unknown_nodes.len());
    for &i in &unknown_nodes {
        coords(i, dim, res, h, &mut x);
        let mut row = Row { diag: 0.0, rhs: -rhs_values[i], neighbors: Vec::with_capacity(2 * dim) };
        for d in 0..dim {
            let stride = res.pow((dim - 1 - d) as u32);
            let arms: Vec<Arm> = [-1.0f64, 1.0]
                .iter()
                .map(|&s| {
                    let j = if s < 0.0 { i - stride } else { i + stride };
                    match kinds[j] {
                        NodeKind::Interior => Arm::Unknown(unknown_of[j], h),
                        NodeKind::Boundary => Arm::Known(values[j], h),
                        NodeKind::Exterior => {
                            // Root t ∈ (0, h] of |x + s t e_d| = 1.
                            let r2: f64 = x.iter().map(|v| v * v).sum();
                            let b = s * x[d];
                            let t = -b + (b * b - r2 + 1.0).max(0.0).sqrt();
                            let t = t.clamp(1e-3 * h * h, h);
                            let mut p = x.clone();
                            p[d] += s * t;
                            Arm::Known(g(&project(&p)), t)
                        }
                    }
                })
                .collect();
            let len = |a: &Arm| match a {
                Arm::Unknown(_, l) | Arm::Known(_, l) => *l,
            };
            let (a, b) = (len(&arms[0]), len(&arms[1]));
            row.diag += 2.0 / (a * b);
            for (arm, l) in arms.iter().zip([a, b]) {
                let c = 2.0 / ((a + b) * l);
                match arm {
                    Arm::Unknown(k, _) => row.neighbors.push((*k, c)),
                    Arm::Known(v, _) => row.rhs += c * v,
                }
            }
        }
        rows.push(row);
    }

    let rho = (std::f64::consts::PI * h / 2.0).cos();
    let omega = 2.0 / (1.0 + (1.0 - rho * rho).sqrt());
    let mut u = vec![Complex64::default(); rows.len()];
    let scale = values
        .iter()
        .map(|v| v.norm())
        .chain(rows.iter().map(|r| r.rhs.norm() / r.diag))
        .fold(1.0f64, f64::max);
    let mut sweeps = 0;
    let mut last_update = f64::INFINITY;
    while sweeps < opts.max_sweeps {
        sweeps += 1;
        let mut change = 0.0f64;
        for (k, row) in rows.iter().enumerate() {
            let mut acc = row.rhs;
            for &(j, c) in &row.neighbors {
                acc += c * u[j];
            }
            let gs = acc / row.diag;
            let delta = omega * (gs - u[k]);
            u[k] += delta;
            change = change.max(delta.norm());
        }
        last_update = change;
        if change <= opts.tol * scale {
            break;
        }
    }
    let mut residual = 0.0f64;
    for (k, row) in rows.iter().enumerate() {
        let mut acc = row.rhs;
        for &(j, c) in &row.neighbors {
            acc += c * u[j];
        }
        residual = residual.max((acc - row.diag * u[k]).norm());
    }
    if last_update > opts.tol * scale {
        return Err(Error::NoConvergence { iterations: sweeps, residual });
    }
    for (k, &i) in unknown_nodes.iter().enumerate() {
        values[i] = u[k];
    }
    Ok(BallSolution {
        dim,
        res,
        h,
        values,
        kinds,
        diagnostics: BallDiagnostics {
            unknowns: rows.len(),
            sweeps,
            omega,
            last_update,
            residual,
            source_fill,
        },
    })
}

/// `log₂(e_coarse/e_fine)` for successive halvings of `h`.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}
