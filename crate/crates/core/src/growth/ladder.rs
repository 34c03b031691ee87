//! Geometric radius ladders `R_k = R0·γ^k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusLadder {
    pub r0: f64,
    pub gamma: f64,
    pub count: usize,
}

impl Default for RadiusLadder {
    fn default() -> Self {
        Self { r0: 1.0, gamma: 1.5, count: 16 }
    }
}

impl RadiusLadder {
    pub fn new(r0: f64, gamma: f64, count: usize) -> Result<Self> {
        if !(r0 > 0.0 && r0.is_finite()) {
            return Err(Error::InvalidInput(format!("ladder base radius {r0} must be positive")));
        }
        if !(gamma > 1.0 && gamma.is_finite()) {
            return Err(Error::InvalidInput(format!("ladder ratio {gamma} must exceed 1")));
        }
        if count == 0 {
            return Err(Error::InvalidInput("ladder needs at least one rung".into()));
        }
        Ok(Self { r0, gamma, count })
    }

    /// Parses `R0,gamma,K`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let bad = || Error::InvalidInput(format!("ladder '{text}' is not R0,gamma,K"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let r0 = parts[0].parse().map_err(|_| bad())?;
        let gamma = parts[1].parse().map_err(|_| bad())?;
        let count = parts[2].parse().map_err(|_| bad())?;
        Self::new(r0, gamma, count)
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.radius(k)).collect()
    }

    pub fn radius(&self, k: usize) -> f64 {
        self.r0 * self.gamma.powi(k as i32)
    }

    pub fn r_max(&self) -> f64 {
        self.radius(self.count - 1)
    }

    /// The same ladder with `extra` rungs appended.
    pub fn extended(&self, extra: usize) -> Self {
        Self { count: self.count + extra, ..*self }
    }
}
