//! Multi-indices `α ∈ ℕ₀^N` and the monomial enumerations built on them.

use std::fmt;

use crate::error::{Error, Result};

/// A multi-index of fixed length `N`. Its order `|α|₁` is always recomputed
/// from the entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("multi-index must have length >= 1".into()));
        }
        Ok(Self(entries))
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// The unit multi-index `e_j`.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut v = vec![0; dim];
        v[j] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when every entry stays nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// `α!` as a float.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| factorial(a as usize)).product()
    }

    /// `ξ^α` for a real point.
    pub fn monomial(&self, xi: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(xi)
            .map(|(&a, &x)| x.powi(a as i32))
            .product()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All multi-indices of order `ell` in `dim` variables, in graded-lex order
/// (`x₁^ℓ` first, `x_N^ℓ` last).
pub fn indices_of_order(ell: usize, dim: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; dim];
    fill(ell, 0, &mut cur, &mut out);
    out
}

fn fill(remaining: usize, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    let dim = cur.len();
    if pos == dim - 1 {
        cur[pos] = remaining as u32;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for a in (0..=remaining).rev() {
        cur[pos] = a as u32;
        fill(remaining - a, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// All multi-indices of order at most `degree`, grouped by order ascending.
/// Empty when `degree < 0`.
pub fn indices_up_to(degree: i64, dim: usize) -> Vec<MultiIndex> {
    if degree < 0 {
        return Vec::new();
    }
    (0..=degree as usize)
        .flat_map(|ell| indices_of_order(ell, dim))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts_match_binomials() {
        for dim in 1..=4 {
            for ell in 0..=6 {
                assert_eq!(indices_of_order(ell, dim).len(), binomial(dim + ell - 1, ell));
            }
        }
    }

    #[test]
    fn graded_lex_order() {
        let idx = indices_of_order(2, 2);
        let raw: Vec<_> = idx.iter().map(|a| a.entries().to_vec()).collect();
        assert_eq!(raw, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn empty_multi_index_rejected() {
        assert!(MultiIndex::new(vec![]).is_err());
    }
}
