use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::norms;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A 1-periodic trigonometric polynomial `F(x) = sum_{|n| <= M} F^(n) e^{2 pi i n x}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicFunction {
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl PeriodicFunction {
    pub fn zeros(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![ZERO; 2 * degree + 1],
        }
    }

    /// `coeffs[i]` is the coefficient of frequency `i - M`.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 != 1 {
            return Err(Error::Config(format!(
                "a degree-M polynomial needs 2M+1 coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self {
            degree: coeffs.len() / 2,
            coeffs,
        })
    }

    pub fn from_coeff_fn(degree: usize, f: impl FnMut(i64) -> Complex64) -> Self {
        let d = degree as i64;
        Self {
            degree,
            coeffs: (-d..=d).map(f).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        let d = self.degree as i64;
        if n < -d || n > d {
            ZERO
        } else {
            self.coeffs[(n + d) as usize]
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let d = self.degree as i64;
        (-d..=d)
            .zip(&self.coeffs)
            .map(|(n, &c)| c * Complex64::cis(2.0 * PI * n as f64 * x))
            .sum()
    }

    /// Samples at the `q` nodes `x_r = -1/2 + r/q` of `J = [-1/2, 1/2)`.
    pub fn samples(&self, q: usize) -> Vec<Complex64> {
        (0..q).map(|r| self.eval(-0.5 + r as f64 / q as f64)).collect()
    }

    /// Default quadrature size for norms: enough nodes to resolve the degree.
    pub fn default_nodes(&self) -> usize {
        (8 * (2 * self.degree + 1)).max(64)
    }

    /// Rectangle-rule `L^p(T)` (quasi-)norm over `q` equispaced nodes.
    pub fn lp_norm_with_nodes(&self, p: f64, q: usize) -> Result<f64> {
        if q == 0 {
            return Err(Error::Config("quadrature needs at least one node".into()));
        }
        norms::quadrature_norm(&self.samples(q), 1.0 / q as f64, p)
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        self.lp_norm_with_nodes(p, self.default_nodes())
    }

    /// Largest `|n|` with a nonzero coefficient.
    pub fn effective_degree(&self) -> usize {
        let d = self.degree as i64;
        (-d..=d)
            .filter(|&n| self.coeff(n) != ZERO)
            .map(|n| n.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `F(x) e^{2 pi i s x}`: coefficients shifted right by `s`.
    pub fn modulate(&self, s: i64) -> Self {
        let d = self.degree as i64 + s.abs();
        Self::from_coeff_fn(d as usize, |n| self.coeff(n - s))
    }

    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let d = self.degree.max(other.degree) as i64;
        (-d..=d)
            .map(|n| (self.coeff(n) - other.coeff(n)).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_matches_coefficients() {
        let f = PeriodicFunction::from_coeff_fn(2, |n| Complex64::new(n as f64, 1.0));
        let x: f64 = 0.3;
        let direct: Complex64 = (-2..=2i64)
            .map(|n| Complex64::new(n as f64, 1.0) * Complex64::cis(2.0 * PI * n as f64 * x))
            .sum();
        assert!((f.eval(x) - direct).norm() < 1e-14);
        assert!((f.eval(x + 1.0) - f.eval(x)).norm() < 1e-12);
    }

    #[test]
    fn l2_norm_is_parseval() {
        let f = PeriodicFunction::from_coeff_fn(3, |n| Complex64::new(1.0 / (1.0 + n.abs() as f64), 0.5));
        let parseval: f64 = f.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        assert!((f.lp_norm(2.0).unwrap() - parseval).abs() < 1e-12);
    }

    #[test]
    fn modulation_shifts_coefficients() {
        let f = PeriodicFunction::from_coeff_fn(1, |n| Complex64::new(n as f64 + 2.0, 0.0));
        let g = f.modulate(2);
        assert_eq!(g.coeff(3), f.coeff(1));
        assert_eq!(g.coeff(1), f.coeff(-1));
        let x = 0.17;
        let expected = f.eval(x) * Complex64::cis(2.0 * PI * 2.0 * x);
        assert!((g.eval(x) - expected).norm() < 1e-13);
    }
}
