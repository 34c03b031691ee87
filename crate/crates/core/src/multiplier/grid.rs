//! Uniform periodic grids on `[0, L)^N`, N-dimensional FFTs and the
//! `HESSOGRD` binary field format.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const GRID_MAGIC: &[u8; 8] = b"HESSOGRD";
pub const GRID_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dim: usize,
    /// Points per axis.
    pub n: usize,
    /// Box length.
    pub length: f64,
}

impl GridSpec {
    pub fn new(dim: usize, n: usize, length: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("grid dimension must be at least 1".into()));
        }
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidInput(format!("points per axis {n} must be a power of two ≥ 2")));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidInput(format!("box length {length} must be positive")));
        }
        Ok(Self { dim, n, length })
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight `L^N / n^N` of one node.
    pub fn cell_volume(&self) -> f64 {
        (self.length / self.n as f64).powi(self.dim as i32)
    }

    /// Per-axis indices of flat index `idx` (axis 0 slowest).
    pub fn unravel(&self, mut idx: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
    }

    /// Signed wavenumber of index `j`.
    pub fn wavenumber(&self, j: usize) -> i64 {
        if j < self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Index of signed wavenumber `k`, if representable.
    pub fn index_of(&self, k: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if k >= -half && k < half {
            Some(if k >= 0 { k as usize } else { (k + self.n as i64) as usize })
        } else {
            None
        }
    }

    /// Node coordinates `x_j = j·L/n`.
    pub fn points(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        let h = self.length / self.n as f64;
        let mut idx = vec![0; self.dim];
        (0..self.len()).map(move |i| {
            self.unravel(i, &mut idx);
            idx.iter().map(|&j| j as f64 * h).collect()
        })
    }

    /// Lattice frequencies `ξ = 2πk/L` in flat order.
    pub fn frequencies(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        let scale = 2.0 * PI / self.length;
        let mut idx = vec![0; self.dim];
        (0..self.len()).map(move |i| {
            self.unravel(i, &mut idx);
            idx.iter().map(|&j| scale * self.wavenumber(j) as f64).collect()
        })
    }
}

/// In-place N-dimensional FFT on a row-major array. The inverse is
/// normalized by `1/n^N`.
pub fn fft_nd(data: &mut [Complex64], spec: &GridSpec, inverse: bool) {
    let n = spec.n;
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    let mut line = vec![Complex64::default(); n];
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    for axis in 0..spec.dim {
        let stride = n.pow((spec.dim - 1 - axis) as u32);
        let block = stride * n;
        for base in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (i, v) in line.iter_mut().enumerate() {
                    *v = data[start + i * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (i, v) in line.iter().enumerate() {
                    data[start + i * stride] = *v;
                }
            }
        }
    }
    if inverse {
        let s = 1.0 / data.len() as f64;
        data.iter_mut().for_each(|v| *v *= s);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    pub spec: GridSpec,
    pub values: Vec<Complex64>,
}

impl GridField {
    pub fn new(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::DimensionMismatch { expected: spec.len(), got: values.len() });
        }
        Ok(Self { spec, values })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        Self { spec, values: vec![Complex64::default(); spec.len()] }
    }

    pub fn from_fn<F: FnMut(&[f64]) -> Complex64>(spec: GridSpec, mut f: F) -> Self {
        let values = spec.points().map(|x| f(&x)).collect();
        Self { spec, values }
    }

    /// Inverse transform of Fourier coefficients given in FFT order.
    pub fn from_spectrum(spec: GridSpec, mut spectrum: Vec<Complex64>) -> Result<Self> {
        if spectrum.len() != spec.len() {
            return Err(Error::DimensionMismatch { expected: spec.len(), got: spectrum.len() });
        }
        fft_nd(&mut spectrum, &spec, true);
        Ok(Self { spec, values: spectrum })
    }

    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut s = self.values.clone();
        fft_nd(&mut s, &self.spec, false);
        s
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    pub fn rms(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn minus_mean(&self) -> Self {
        let m = self.mean();
        Self { spec: self.spec, values: self.values.iter().map(|v| v - m).collect() }
    }

    /// Discrete `L^p` norm with weights `L^N/n^N`; `p = ∞` is the node maximum.
    pub fn lp_norm(&self, p: f64) -> f64 {
        lp_norm_of(self.values.iter().map(|v| v.norm()), p, self.spec.cell_volume())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { spec: self.spec, values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { spec: self.spec, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { spec: self.spec, values: self.values.iter().map(|v| c * v).collect() }
    }

    /// `max|a − b| / max|b|`.
    pub fn relative_diff(&self, reference: &Self) -> f64 {
        let d = self.values.iter().zip(&reference.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        d / reference.max_abs().max(f64::MIN_POSITIVE)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::InvalidInput("grid specs differ".into()));
        }
        Ok(())
    }

    /// Multiplies the spectrum by `m(ξ)` and transforms back.
    pub fn apply_multiplier<F: FnMut(&[f64]) -> Complex64>(&self, mut m: F) -> Self {
        let mut s = self.spectrum();
        for (v, xi) in s.iter_mut().zip(self.spec.frequencies()) {
            *v *= m(&xi);
        }
        fft_nd(&mut s, &self.spec, true);
        Self { spec: self.spec, values: s }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(GRID_MAGIC)?;
        w.write_all(&GRID_VERSION.to_le_bytes())?;
        w.write_all(&(self.spec.dim as u32).to_le_bytes())?;
        w.write_all(&(self.spec.n as u32).to_le_bytes())?;
        w.write_all(&self.spec.length.to_le_bytes())?;
        for v in &self.values {
            w.write_all(&v.re.to_le_bytes())?;
            w.write_all(&v.im.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != GRID_MAGIC {
            return Err(Error::InvalidInput(format!("{} is not a grid field file", path.display())));
        }
        let mut u4 = [0u8; 4];
        let mut read_u32 = |r: &mut BufReader<File>| -> Result<u32> {
            r.read_exact(&mut u4)?;
            Ok(u32::from_le_bytes(u4))
        };
        let version = read_u32(&mut r)?;
        if version != GRID_VERSION {
            return Err(Error::InvalidInput(format!("unsupported grid file version {version}")));
        }
        let dim = read_u32(&mut r)? as usize;
        let n = read_u32(&mut r)? as usize;
        let mut f8 = [0u8; 8];
        r.read_exact(&mut f8)?;
        let spec = GridSpec::new(dim, n, f64::from_le_bytes(f8))?;
        let mut values = Vec::with_capacity(spec.len());
        for _ in 0..spec.len() {
            r.read_exact(&mut f8)?;
            let re = f64::from_le_bytes(f8);
            r.read_exact(&mut f8)?;
            values.push(Complex64::new(re, f64::from_le_bytes(f8)));
        }
        Ok(Self { spec, values })
    }
}

pub(crate) fn lp_norm_of<I: Iterator<Item = f64>>(abs: I, p: f64, cell: f64) -> f64 {
    if p.is_infinite() {
        abs.fold(0.0, f64::max)
    } else {
        (abs.map(|a| a.powf(p)).sum::<f64>() * cell).powf(1.0 / p)
    }
}

/// `n` component fields on a shared grid.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorGridField {
    pub components: Vec<GridField>,
}

impl VectorGridField {
    pub fn new(components: Vec<GridField>) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::InvalidInput("no components".into()))?;
        if components.iter().any(|c| c.spec != first.spec) {
            return Err(Error::InvalidInput("components must share a grid".into()));
        }
        Ok(Self { components })
    }

    pub fn spec(&self) -> GridSpec {
        self.components[0].spec
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Largest componentwise [`GridField::relative_diff`], relative to the
    /// largest reference component.
    pub fn relative_diff(&self, reference: &Self) -> f64 {
        let scale = reference.components.iter().map(GridField::max_abs).fold(0.0, f64::max);
        let d = self
            .components
            .iter()
            .zip(&reference.components)
            .flat_map(|(a, b)| a.values.iter().zip(&b.values).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max);
        d / scale.max(f64::MIN_POSITIVE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn fft_round_trip_and_single_mode() {
        let spec = GridSpec::new(2, 8, 2.0 * PI).unwrap();
        let f = GridField::from_fn(spec, |x| Complex64::from_polar(1.0, 2.0 * x[0] - x[1]));
        let s = f.spectrum();
        let peak = spec.index_of(2).unwrap() * 8 + spec.index_of(-1).unwrap();
        assert!((s[peak] - c(64.0)).norm() < 1e-10);
        let back = GridField::from_spectrum(spec, s).unwrap();
        assert!(back.relative_diff(&f) < 1e-14);
    }

    #[test]
    fn wavenumbers_and_norms() {
        let spec = GridSpec::new(1, 8, 1.0).unwrap();
        let ks: Vec<i64> = (0..8).map(|j| spec.wavenumber(j)).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        let one = GridField::from_fn(spec, |_| c(1.0));
        assert!((one.lp_norm(2.0) - 1.0).abs() < 1e-15);
        assert_eq!(one.lp_norm(f64::INFINITY), 1.0);
        assert!(GridSpec::new(2, 12, 1.0).is_err());
    }

    #[test]
    fn file_round_trip() {
        let spec = GridSpec::new(3, 4, 1.5).unwrap();
        let f = GridField::from_fn(spec, |x| Complex64::new(x[0], x[1] * x[2]));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.grid");
        f.write(&path).unwrap();
        assert_eq!(GridField::read(&path).unwrap(), f);
        std::fs::write(&path, b"NOTAGRID").unwrap();
        assert!(GridField::read(&path).is_err());
    }
}
