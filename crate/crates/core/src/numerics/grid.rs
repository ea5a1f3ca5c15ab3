use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid `x_j = -L + j h`, `j = 0..N`, over `[-L, L)` with `h = 2L / N`.
///
/// The dual grid has spacing `1 / (2L)` and carries the frequencies
/// `xi_k = k / (2L)` for `k = -N/2 .. N/2 - 1`. Both are stored in centered
/// order: index `i` corresponds to `k = i - N/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    half_width: f64,
    len: usize,
}

impl Grid1D {
    pub fn new(half_width: f64, len: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::Config(format!(
                "grid half-width must be positive and finite, got {half_width}"
            )));
        }
        if len == 0 || !len.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "grid point count must be positive and even, got {len}"
            )));
        }
        Ok(Self { half_width, len })
    }

    /// Grid over `[-L, L)` with `samples_per_unit` points per unit length.
    pub fn with_resolution(half_width: f64, samples_per_unit: usize) -> Result<Self> {
        let n = 2.0 * half_width * samples_per_unit as f64;
        if n.fract() != 0.0 || n <= 0.0 {
            return Err(Error::Config(format!(
                "2L * samples_per_unit must be a positive integer (L = {half_width}, spu = {samples_per_unit})"
            )));
        }
        Self::new(half_width, n as usize)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.len as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |j| self.point(j))
    }

    pub fn freq_spacing(&self) -> f64 {
        1.0 / (2.0 * self.half_width)
    }

    /// Signed frequency index of centered position `i`.
    pub fn freq_index(&self, i: usize) -> i64 {
        i as i64 - (self.len / 2) as i64
    }

    pub fn frequency(&self, i: usize) -> f64 {
        self.freq_index(i) as f64 * self.freq_spacing()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |i| self.frequency(i))
    }

    /// Number of samples per unit length when `1/h` is an integer.
    pub fn samples_per_unit(&self) -> Option<usize> {
        let spu = self.len as f64 / (2.0 * self.half_width);
        (spu.fract() == 0.0 && spu >= 1.0).then_some(spu as usize)
    }

    /// Index of the grid point sitting exactly on the integer `n`, if any.
    pub fn integer_index(&self, n: i64) -> Option<usize> {
        let spu = self.samples_per_unit()?;
        let offset = (n as f64 + self.half_width) * spu as f64;
        if offset.fract() != 0.0 || offset < 0.0 || offset >= self.len as f64 {
            return None;
        }
        Some(offset as usize)
    }

    /// True when every integer in `[-L, L)` is a grid point.
    pub fn contains_integers(&self) -> bool {
        self.samples_per_unit().is_some() && self.integer_index(0).is_some()
    }

    /// Integers lying on the grid, in increasing order.
    pub fn integers(&self) -> Vec<i64> {
        let lo = (-self.half_width).ceil() as i64;
        let hi = self.half_width.ceil() as i64;
        (lo..hi).filter(|&n| self.integer_index(n).is_some()).collect()
    }
}
