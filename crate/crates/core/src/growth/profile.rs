//! Growth exponents fitted over a ladder and heuristic `M^{s,q}` /
//! `M_0^{s,q}` verdicts.

use std::io::Write;

use serde::Serialize;

use super::field::AnalyticField;
use super::ladder::RadiusLadder;
use super::norms::{ladder_norms, normalize, QuadratureSpec};
use crate::error::{Error, Result};

pub const MIN_FIT_RUNGS: usize = 4;
pub const DEFAULT_TOL: f64 = 0.05;
/// Final-over-first normalized ratio below which a decaying tail counts as
/// vanishing.
pub const VANISHING_RATIO: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailTrend {
    Bounded,
    Decaying,
    Growing,
}

/// Least-squares line through `(x, y)`: slope and its standard error.
pub fn fit_slope(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    if x.len() <= 2 {
        return (slope, 0.0);
    }
    let ssr: f64 = x.iter().zip(y).map(|(a, b)| (b - my - slope * (a - mx)).powi(2)).sum();
    (slope, (ssr / (n - 2.0) / sxx).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthProfile {
    pub dim: usize,
    pub label: String,
    pub q: f64,
    pub ladder: RadiusLadder,
    /// Inner radius of the integration region (0 for balls).
    pub inner: f64,
    pub radii: Vec<f64>,
    pub ball_norms: Vec<f64>,
    pub s_query: f64,
    pub normalized: Vec<f64>,
    pub fitted_exponent: f64,
    pub std_error: f64,
    pub tail_trend: TailTrend,
    pub consistent_m: bool,
    pub consistent_m0: bool,
    /// Ladder maximum of the normalized values.
    pub m_norm: f64,
    pub tol: f64,
    pub heuristic: bool,
}

/// Index of the first tail rung used in fits.
pub fn tail_start(count: usize) -> usize {
    count - (count / 2).max(MIN_FIT_RUNGS).min(count)
}

impl GrowthProfile {
    /// Fits and classifies precomputed rung norms.
    pub fn from_norms(
        field: &AnalyticField,
        q: f64,
        s: f64,
        inner: f64,
        ladder: &RadiusLadder,
        ball_norms: Vec<f64>,
        tol: f64,
    ) -> Result<Self> {
        if ladder.count < MIN_FIT_RUNGS {
            return Err(Error::InvalidInput(format!(
                "exponent fitting needs at least {MIN_FIT_RUNGS} rungs, got {}",
                ladder.count
            )));
        }
        let dim = field.dim();
        let radii = ladder.radii();
        let normalized = normalize(&ball_norms, &radii, s, q, dim);
        let start = tail_start(ladder.count);
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for k in start..ladder.count {
            if ball_norms[k] > 0.0 {
                xs.push(radii[k].ln());
                ys.push(ball_norms[k].ln() - dim as f64 / q * radii[k].ln());
            }
        }
        let (fitted, se) = if xs.len() >= 2 { fit_slope(&xs, &ys) } else { (f64::NEG_INFINITY, 0.0) };
        let tail = &normalized[start..];
        let decreasing = tail.windows(2).all(|w| w[1] < w[0]);
        let vanishing = decreasing && normalized[ladder.count - 1] < VANISHING_RATIO * normalized[0];
        let tail_trend = if fitted > s + tol {
            TailTrend::Growing
        } else if fitted < s - tol || vanishing {
            TailTrend::Decaying
        } else {
            TailTrend::Bounded
        };
        Ok(Self {
            dim,
            label: field.label().to_string(),
            q,
            ladder: *ladder,
            inner,
            m_norm: normalized.iter().copied().fold(0.0, f64::max),
            radii,
            ball_norms,
            s_query: s,
            normalized,
            fitted_exponent: fitted,
            std_error: se,
            tail_trend,
            consistent_m: fitted <= s + tol,
            consistent_m0: fitted <= s - tol || vanishing,
            tol,
            heuristic: true,
        })
    }

    /// Rung table: `rung,R,ball_norm,normalized,in_M,in_M0`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["rung", "R", "ball_norm", "normalized", "in_M", "in_M0"])?;
        for k in 0..self.radii.len() {
            w.write_record([
                k.to_string(),
                format!("{:.9e}", self.radii[k]),
                format!("{:.9e}", self.ball_norms[k]),
                format!("{:.9e}", self.normalized[k]),
                self.consistent_m.to_string(),
                self.consistent_m0.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "dim": self.dim,
            "q": if self.q.is_infinite() { serde_json::json!("inf") } else { serde_json::json!(self.q) },
            "s": self.s_query,
            "fitted_exponent": if self.fitted_exponent.is_finite() {
                serde_json::json!(self.fitted_exponent)
            } else {
                serde_json::json!("-inf")
            },
            "std_error": self.std_error,
            "tail_trend": self.tail_trend,
            "m_norm_ladder": self.m_norm,
            "consistent_m": self.consistent_m,
            "consistent_m0": self.consistent_m0,
            "heuristic": self.heuristic,
        })
    }
}

/// Growth profile over balls `B_R`.
pub fn classify(
    u: &AnalyticField,
    q: f64,
    s: f64,
    ladder: &RadiusLadder,
    quad: &QuadratureSpec,
    tol: f64,
) -> Result<GrowthProfile> {
    classify_region(u, q, s, 0.0, ladder, quad, tol)
}

/// Growth profile over `B_R ∖ B_inner`.
pub fn classify_region(
    u: &AnalyticField,
    q: f64,
    s: f64,
    inner: f64,
    ladder: &RadiusLadder,
    quad: &QuadratureSpec,
    tol: f64,
) -> Result<GrowthProfile> {
    let norms = ladder_norms(u, q, inner, ladder, quad)?;
    GrowthProfile::from_norms(u, q, s, inner, ladder, norms, tol)
}

/// Fitted exponent only.
pub fn fitted_exponent(u: &AnalyticField, q: f64, ladder: &RadiusLadder, quad: &QuadratureSpec) -> Result<f64> {
    Ok(classify(u, q, 0.0, ladder, quad, DEFAULT_TOL)?.fitted_exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::symbol::MultiIndex;
    use crate::Complex64;

    #[test]
    fn slope_of_exact_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        let (s, se) = fit_slope(&x, &y);
        assert!((s - 2.0).abs() < 1e-14 && se < 1e-12);
    }

    #[test]
    fn polynomial_degree_recovered() {
        let p = Polynomial::new(
            2,
            [
                (MultiIndex::new(vec![3, 0]).unwrap(), Complex64::new(1.0, 0.0)),
                (MultiIndex::new(vec![1, 1]).unwrap(), Complex64::new(0.0, 2.0)),
                (MultiIndex::new(vec![0, 0]).unwrap(), Complex64::new(1.0, 0.0)),
            ],
        )
        .unwrap();
        let u = AnalyticField::polynomial(&p);
        let quad = QuadratureSpec::for_dim(2);
        let prof = classify(&u, 2.0, 3.0, &RadiusLadder::default(), &quad, DEFAULT_TOL).unwrap();
        assert!((prof.fitted_exponent - 3.0).abs() < 0.05);
        assert!(prof.consistent_m && !prof.consistent_m0);
        let below = classify(&u, 2.0, 2.0, &RadiusLadder::default(), &quad, DEFAULT_TOL).unwrap();
        assert!(!below.consistent_m);
    }

    #[test]
    fn newtonian_potential_tail() {
        let u = AnalyticField::smoothed_power(3, -1.0, 0.5);
        let prof = classify(&u, 1.0, 0.0, &RadiusLadder::default(), &QuadratureSpec::for_dim(3), DEFAULT_TOL)
            .unwrap();
        assert!((prof.fitted_exponent + 1.0).abs() < 0.05, "{}", prof.fitted_exponent);
        assert!(prof.consistent_m0);
        assert_eq!(prof.tail_trend, TailTrend::Decaying);
    }

    #[test]
    fn sup_growth_of_one_plus_r() {
        let a = 0.5;
        let u = AnalyticField::one_plus_r_power(2, a);
        let prof = classify(&u, f64::INFINITY, a, &RadiusLadder::default(), &QuadratureSpec::for_dim(2), DEFAULT_TOL)
            .unwrap();
        assert!((prof.fitted_exponent - a).abs() < 0.05);
        assert!(prof.consistent_m);
    }

    #[test]
    fn zero_field_fits_minus_infinity() {
        let u = AnalyticField::constant(2, 0.0);
        let prof = classify(&u, 1.0, 0.0, &RadiusLadder::default(), &QuadratureSpec::for_dim(2), DEFAULT_TOL).unwrap();
        assert_eq!(prof.fitted_exponent, f64::NEG_INFINITY);
        assert!(prof.consistent_m0);
    }

    #[test]
    fn too_few_rungs() {
        let u = AnalyticField::constant(2, 1.0);
        let ladder = RadiusLadder::new(1.0, 1.5, 3).unwrap();
        assert!(classify(&u, 1.0, 0.0, &ladder, &QuadratureSpec::for_dim(2), DEFAULT_TOL).is_err());
    }

    #[test]
    fn csv_has_one_row_per_rung() {
        let u = AnalyticField::constant(2, 1.0);
        let prof = classify(&u, 1.0, 0.0, &RadiusLadder::default(), &QuadratureSpec::for_dim(2), DEFAULT_TOL).unwrap();
        let mut buf = Vec::new();
        prof.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 17);
    }
}
