//! Calderón–Zygmund ratios `‖∇^{m+κ}u‖_p / ‖∇^κ Au‖_p` on the torus and
//! random-field surveys of their supremum.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::grid::{lp_norm_of, GridField, GridSpec};
use super::solve::{derivative_field, spectral_derivative};
use crate::error::{Error, Result};
use crate::symbol::multi_index::indices_of_order;
use crate::symbol::{MultiIndex, ScalarOperator};

/// Pointwise `|∇^k v| = (Σ_{|α|=k} k!/α! |∂^α v|²)^{1/2}` from the
/// components `∂^α v`.
fn tensor_magnitude(parts: &[(f64, GridField)], len: usize) -> Vec<f64> {
    (0..len)
        .map(|i| parts.iter().map(|(w, f)| w * f.values[i].norm_sqr()).sum::<f64>().sqrt())
        .collect()
}

fn multinomial(alpha: &MultiIndex) -> f64 {
    crate::symbol::multi_index::factorial(alpha.order()) / alpha.factorial()
}

/// `‖∇^k v‖_p` with the full symmetric-tensor norm.
pub fn gradient_norm(v: &GridField, k: usize, p: f64) -> Result<f64> {
    let parts = indices_of_order(k, v.spec.dim)
        .into_iter()
        .map(|a| Ok((multinomial(&a), spectral_derivative(&a, v)?)))
        .collect::<Result<Vec<_>>>()?;
    let mag = tensor_magnitude(&parts, v.values.len());
    Ok(lp_norm_of(mag.into_iter(), p, v.spec.cell_volume()))
}

/// `‖∇^{m+κ}u‖_p / ‖∇^κ f‖_p` for the zero-mean solution of `Au = f`.
pub fn cz_ratio(op: &ScalarOperator, f: &GridField, p: f64, kappa: usize) -> Result<f64> {
    if p < 1.0 {
        return Err(Error::InvalidInput(format!("p = {p} must lie in [1, ∞]")));
    }
    let m = op.order().ok_or_else(|| Error::InvalidInput("zero operator".into()))?;
    let denom = gradient_norm(f, kappa, p)?;
    if denom == 0.0 {
        return Err(Error::InvalidInput("CZ ratio undefined for a source with vanishing norm".into()));
    }
    let parts = indices_of_order(m + kappa, f.spec.dim)
        .into_iter()
        .map(|a| Ok((multinomial(&a), derivative_field(op, &a, f)?)))
        .collect::<Result<Vec<_>>>()?;
    let mag = tensor_magnitude(&parts, f.values.len());
    Ok(lp_norm_of(mag.into_iter(), p, f.spec.cell_volume()) / denom)
}

/// Seeded band-limited random fields.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatterySpec {
    pub count: usize,
    pub seed: u64,
    /// Wavenumbers with `max_i |k_i| ≤ band` are populated.
    pub band: usize,
}

impl BatterySpec {
    pub const MIN_COUNT: usize = 20;

    /// Band keeping the lower two thirds of the spectrum of an `n`-point axis.
    pub fn for_grid(n: usize, seed: u64) -> Self {
        Self { count: Self::MIN_COUNT, seed, band: (n / 3).max(1) }
    }

    /// Complex Gaussian coefficients on the band, zero mean. The same seed
    /// and band give the same trigonometric polynomial on every grid that
    /// resolves the band.
    pub fn fields(&self, spec: &GridSpec) -> Result<Vec<GridField>> {
        let b = self.band as i64;
        if spec.index_of(b).is_none() || spec.index_of(-b).is_none() {
            return Err(Error::InvalidInput(format!("band {b} not resolved by {} points", spec.n)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let width = (2 * b + 1) as usize;
        let modes = width.pow(spec.dim as u32);
        let mut out = Vec::with_capacity(self.count);
        let mut k = vec![0i64; spec.dim];
        for _ in 0..self.count {
            let mut spectrum = vec![Complex64::default(); spec.len()];
            for m in 0..modes {
                let mut rest = m;
                for slot in k.iter_mut().rev() {
                    *slot = (rest % width) as i64 - b;
                    rest /= width;
                }
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                if k.iter().all(|&v| v == 0) {
                    continue;
                }
                let idx = k.iter().fold(0usize, |acc, &v| acc * spec.n + spec.index_of(v).unwrap());
                spectrum[idx] = Complex64::new(re, im) * spec.len() as f64;
            }
            out.push(GridField::from_spectrum(*spec, spectrum)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CzRow {
    pub p: f64,
    pub fields: usize,
    pub max: f64,
    pub median: f64,
}

/// Max and median of [`cz_ratio`] over the battery, per `p`. The max is an
/// empirical lower bound for the inequality constant.
pub fn cz_survey(
    op: &ScalarOperator,
    ps: &[f64],
    battery: &BatterySpec,
    spec: &GridSpec,
    kappa: usize,
) -> Result<Vec<CzRow>> {
    if battery.count < BatterySpec::MIN_COUNT {
        return Err(Error::InvalidInput(format!(
            "battery needs at least {} fields",
            BatterySpec::MIN_COUNT
        )));
    }
    let fields = battery.fields(spec)?;
    ps.iter()
        .map(|&p| {
            let mut r = fields.iter().map(|f| cz_ratio(op, f, p, kappa)).collect::<Result<Vec<_>>>()?;
            r.sort_by(f64::total_cmp);
            let median = if r.len() % 2 == 1 { r[r.len() / 2] } else { 0.5 * (r[r.len() / 2 - 1] + r[r.len() / 2]) };
            Ok(CzRow { p, fields: r.len(), max: *r.last().unwrap(), median })
        })
        .collect()
}
