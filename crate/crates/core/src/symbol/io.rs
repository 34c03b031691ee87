//! JSON operator and DN-system files, and the built-in catalog.
//!
//! Operator file: `{"dim": N, "order": m, "coeffs": [{"alpha": [..], "re": .., "im": ..}]}`.
//! System file: `{"dim": N, "m_weights": [..], "k_weights": [..], "entries": [[..]]}`
//! where each entry is `null` (zero), a built-in operator name, or an
//! operator object.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dn::DNSystem;
use super::multi_index::MultiIndex;
use super::operator::ScalarOperator;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoeffEntry {
    pub alpha: Vec<u32>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OperatorFile {
    pub dim: usize,
    pub order: usize,
    pub coeffs: Vec<CoeffEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Named(String),
    Inline(OperatorFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFile {
    pub dim: usize,
    pub m_weights: Vec<i64>,
    pub k_weights: Vec<i64>,
    pub entries: Vec<Vec<Option<EntrySpec>>>,
}

pub(crate) fn coeff_entries<'a>(
    it: impl Iterator<Item = (&'a MultiIndex, &'a Complex64)>,
) -> Vec<CoeffEntry> {
    it.map(|(a, c)| CoeffEntry { alpha: a.entries().to_vec(), re: c.re, im: c.im })
        .collect()
}

pub(crate) fn parse_coeffs(dim: usize, coeffs: &[CoeffEntry]) -> Result<Vec<(MultiIndex, Complex64)>> {
    coeffs
        .iter()
        .map(|e| {
            let a = MultiIndex::new(e.alpha.clone())?;
            if a.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: a.dim() });
            }
            Ok((a, Complex64::new(e.re, e.im)))
        })
        .collect()
}

impl OperatorFile {
    pub fn from_operator(op: &ScalarOperator) -> Self {
        Self {
            dim: op.dim(),
            order: op.order().unwrap_or(0),
            coeffs: coeff_entries(op.coeffs()),
        }
    }

    pub fn to_operator(&self) -> Result<ScalarOperator> {
        let coeffs = parse_coeffs(self.dim, &self.coeffs)?;
        if coeffs.iter().all(|(_, c)| *c == Complex64::new(0.0, 0.0)) {
            return Ok(ScalarOperator::zero(self.dim));
        }
        ScalarOperator::new(self.dim, self.order, coeffs)
    }
}

impl SystemFile {
    pub fn from_system(sys: &DNSystem) -> Self {
        let entries = sys
            .entries()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|op| (!op.is_zero()).then(|| EntrySpec::Inline(OperatorFile::from_operator(op))))
                    .collect()
            })
            .collect();
        Self {
            dim: sys.dim(),
            m_weights: sys.m_weights().to_vec(),
            k_weights: sys.k_weights().to_vec(),
            entries,
        }
    }

    pub fn to_system(&self) -> Result<DNSystem> {
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        None => Ok(ScalarOperator::zero(self.dim)),
                        Some(EntrySpec::Named(name)) => builtin_operator(name, self.dim),
                        Some(EntrySpec::Inline(f)) => f.to_operator(),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        DNSystem::new(self.dim, self.m_weights.clone(), self.k_weights.clone(), entries)
    }
}

/// Built-in scalar operator names.
pub const OPERATOR_NAMES: &[&str] = &[
    "laplacian",
    "bilaplacian",
    "cauchy_riemann",
    "cauchy_riemann_squared",
    "d1",
];

/// Built-in system names.
pub const SYSTEM_NAMES: &[&str] = &["stokes"];

/// Resolves a built-in operator in dimension `dim`.
///
/// `laplacian` is `−Δ` (symbol `|ξ|²`), `bilaplacian` is `Δ²`,
/// `cauchy_riemann` is `∂̄` (only `N = 2`), `d1` is `∂₁`.
pub fn builtin_operator(name: &str, dim: usize) -> Result<ScalarOperator> {
    match name {
        "laplacian" => Ok(ScalarOperator::neg_laplacian(dim)),
        "bilaplacian" => Ok(ScalarOperator::bilaplacian(dim)),
        "cauchy_riemann" | "cauchy_riemann_squared" => {
            if dim != 2 {
                return Err(Error::InvalidInput(format!("{name} is defined for N=2 only")));
            }
            let d = ScalarOperator::cauchy_riemann();
            if name == "cauchy_riemann" {
                Ok(d)
            } else {
                d.multiply(&d)
            }
        }
        "d1" => ScalarOperator::partial(dim, 0),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

pub fn builtin_system(name: &str, dim: usize) -> Result<DNSystem> {
    match name {
        "stokes" => {
            if dim < 2 {
                return Err(Error::InvalidInput("stokes needs N >= 2".into()));
            }
            Ok(DNSystem::stokes(dim))
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Resolves `NAME` from the catalog, or reads `FILE` when the argument is an
/// existing path.
pub fn resolve_operator(spec: &str, dim: usize) -> Result<ScalarOperator> {
    let path = Path::new(spec);
    if path.is_file() {
        return read_operator(path);
    }
    builtin_operator(spec, dim)
}

pub fn resolve_system(spec: &str, dim: usize) -> Result<DNSystem> {
    let path = Path::new(spec);
    if path.is_file() {
        return read_system(path);
    }
    builtin_system(spec, dim)
}

pub fn read_operator(path: &Path) -> Result<ScalarOperator> {
    let text = std::fs::read_to_string(path)?;
    let f: OperatorFile = serde_json::from_str(&text)?;
    f.to_operator()
}

pub fn write_operator(path: &Path, op: &ScalarOperator) -> Result<()> {
    let text = serde_json::to_string_pretty(&OperatorFile::from_operator(op))?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_system(path: &Path) -> Result<DNSystem> {
    let text = std::fs::read_to_string(path)?;
    let f: SystemFile = serde_json::from_str(&text)?;
    f.to_system()
}

pub fn write_system(path: &Path, sys: &DNSystem) -> Result<()> {
    let text = serde_json::to_string_pretty(&SystemFile::from_system(sys))?;
    std::fs::write(path, text)?;
    Ok(())
}
