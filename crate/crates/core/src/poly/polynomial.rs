//! Complex polynomials on `ℝ^N` in the monomial basis.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::symbol::io::{coeff_entries, parse_coeffs, CoeffEntry};
use crate::symbol::multi_index::{indices_up_to, MultiIndex};

#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: BTreeMap::new() }
    }

    pub fn new<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut p = Self::zero(dim);
        for (alpha, c) in terms {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: alpha.dim() });
            }
            *p.coeffs.entry(alpha).or_default() += c;
        }
        p.prune();
        Ok(p)
    }

    /// The single monomial `c·x^α`.
    pub fn monomial(alpha: MultiIndex, c: Complex64) -> Self {
        let dim = alpha.dim();
        Self::new(dim, [(alpha, c)]).expect("dimension taken from alpha")
    }

    /// `|x|²`.
    pub fn norm_squared(dim: usize) -> Self {
        let terms = (0..dim).map(|j| {
            let mut e = vec![0; dim];
            e[j] = 2;
            (MultiIndex::new(e).unwrap(), Complex64::new(1.0, 0.0))
        });
        Self::new(dim, terms).unwrap()
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Highest `|α|₁` with a nonzero coefficient; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.keys().map(|a| a.order() as i64).max().unwrap_or(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.coeffs.get(alpha).copied().unwrap_or_default()
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.coeffs.iter().map(|(a, c)| c * a.monomial(x)).sum()
    }

    /// Gradient components at `x`.
    pub fn gradient(&self, x: &[f64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|j| {
                self.coeffs
                    .iter()
                    .filter(|(a, _)| a.entries()[j] > 0)
                    .map(|(a, c)| {
                        let k = a.entries()[j];
                        let lower = a.checked_sub(&MultiIndex::unit(self.dim, j)).unwrap();
                        c * (k as f64) * lower.monomial(x)
                    })
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            *out.coeffs.entry(a.clone()).or_default() += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Coefficients in the graded basis of `P_degree`. Terms of higher
    /// degree are an error.
    pub fn to_vector(&self, degree: i64) -> Result<CVector> {
        if self.degree() > degree {
            return Err(Error::InvalidInput(format!(
                "polynomial of degree {} does not fit in P_{degree}",
                self.degree()
            )));
        }
        let basis = indices_up_to(degree, self.dim);
        Ok(CVector::from_iterator(basis.len(), basis.iter().map(|a| self.coeff(a))))
    }

    /// Seeded polynomial with standard complex Gaussian coefficients on
    /// every monomial of degree at most `degree`.
    pub fn random(dim: usize, degree: i64, seed: u64) -> Self {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let terms: Vec<_> = indices_up_to(degree, dim)
            .into_iter()
            .map(|a| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                (a, Complex64::new(re, im))
            })
            .collect();
        Self::new(dim, terms).expect("indices share the dimension")
    }

    pub fn from_vector(dim: usize, degree: i64, v: &CVector) -> Result<Self> {
        let basis = indices_up_to(degree, dim);
        if basis.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), got: v.len() });
        }
        Self::new(dim, basis.into_iter().zip(v.iter().copied()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub dim: usize,
    pub coeffs: Vec<CoeffEntry>,
}

impl PolynomialFile {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        Self { dim: p.dim(), coeffs: coeff_entries(p.terms()) }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        Polynomial::new(self.dim, parse_coeffs(self.dim, &self.coeffs)?)
    }
}

pub fn read_polynomial(path: &Path) -> Result<Polynomial> {
    let f: PolynomialFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    f.to_polynomial()
}

pub fn write_polynomial(path: &Path, p: &Polynomial) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(&PolynomialFile::from_polynomial(p))?)?;
    Ok(())
}
