use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::Grid1D;
use super::norms;
use crate::error::{Error, Result};

/// Complex samples of a function on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(j) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain(format!("sample {j} is not finite")));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl FnMut(f64) -> Complex64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn from_real_fn(grid: Grid1D, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// `(h * sum |f(x_j)|^p)^(1/p)`, `max |f(x_j)|` for `p = inf`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        norms::quadrature_norm(&self.values, self.grid.spacing(), p)
    }

    /// `h * sum |f(x_j)|^p` (the `p`-th power of the norm), `max` for `p = inf`.
    pub fn power_integral(&self, p: f64) -> Result<f64> {
        norms::check_exponent(p)?;
        let s = norms::power_sum(&self.values, p);
        Ok(if p.is_infinite() { s } else { self.grid.spacing() * s })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Pointwise `a*self + other`.
    pub fn axpy(&self, a: Complex64, other: &Self) -> Result<Self> {
        self.ensure_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + y)
            .collect();
        Ok(Self { grid: self.grid, values })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(x, y)| x * y).collect();
        Ok(Self { grid: self.grid, values })
    }

    /// `x -> f(x - shift)` for a shift that is a whole number of grid steps,
    /// with zero extension outside `[-L, L)`.
    pub fn translate(&self, steps: i64) -> Self {
        let n = self.values.len() as i64;
        let zero = Complex64::new(0.0, 0.0);
        let values = (0..n)
            .map(|j| {
                let src = j - steps;
                if (0..n).contains(&src) {
                    self.values[src as usize]
                } else {
                    zero
                }
            })
            .collect();
        Self { grid: self.grid, values }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.ensure_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn ensure_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!(
                "grids differ: {:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }
}

/// Transform samples `f^(xi_k)` on the dual grid of a [`Grid1D`], centered order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} spectral samples for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl FnMut(f64) -> Complex64) -> Self {
        let values = grid.frequencies().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Fraction of `sum |f^|^2` carried by frequencies with `|xi| > limit`.
    pub fn energy_fraction_outside(&self, limit: f64) -> f64 {
        let mut total = 0.0;
        let mut outside = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            let e = v.norm_sqr();
            total += e;
            if self.grid.frequency(i).abs() > limit {
                outside += e;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            outside / total
        }
    }
}
