use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::norms;
use crate::error::Result;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Finitely supported sequence on the integers, stored on `{-M, ..., M}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteSequence {
    radius: usize,
    values: Vec<Complex64>,
}

impl FiniteSequence {
    pub fn zeros(radius: usize) -> Self {
        Self {
            radius,
            values: vec![ZERO; 2 * radius + 1],
        }
    }

    /// Panics if `values.len()` is even.
    pub fn from_values(values: Vec<Complex64>) -> Self {
        assert!(values.len() % 2 == 1, "sequence storage must have odd length");
        Self {
            radius: values.len() / 2,
            values,
        }
    }

    pub fn from_fn(radius: usize, f: impl FnMut(i64) -> Complex64) -> Self {
        let r = radius as i64;
        Self {
            radius,
            values: (-r..=r).map(f).collect(),
        }
    }

    pub fn delta(radius: usize, k: i64) -> Self {
        Self::from_fn(radius, |n| if n == k { Complex64::new(1.0, 0.0) } else { ZERO })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        let r = self.radius as i64;
        -r..=r
    }

    pub fn get(&self, k: i64) -> Complex64 {
        let r = self.radius as i64;
        if k < -r || k > r {
            ZERO
        } else {
            self.values[(k + r) as usize]
        }
    }

    pub fn set(&mut self, k: i64, v: Complex64) {
        let r = self.radius as i64;
        assert!(k >= -r && k <= r, "index {k} outside radius {r}");
        self.values[(k + r) as usize] = v;
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        norms::sequence_norm(&self.values, p)
    }

    /// `a^(theta) = sum_k a_k e^{-2 pi i k theta}`.
    pub fn transform_at(&self, theta: f64) -> Complex64 {
        self.indices()
            .zip(&self.values)
            .map(|(k, &a)| a * Complex64::cis(-2.0 * std::f64::consts::PI * k as f64 * theta))
            .sum()
    }

    /// Smallest radius holding every nonzero term.
    pub fn support_radius(&self) -> usize {
        self.indices()
            .filter(|&k| self.get(k) != ZERO)
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

/// Finitely supported array on `Z^2`, stored on `{-M, ..., M}^2` row-major in `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteSequence2D {
    radius: usize,
    values: Vec<Complex64>,
}

impl FiniteSequence2D {
    pub fn zeros(radius: usize) -> Self {
        let side = 2 * radius + 1;
        Self {
            radius,
            values: vec![ZERO; side * side],
        }
    }

    pub fn from_fn(radius: usize, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        let r = radius as i64;
        let mut values = Vec::with_capacity((2 * radius + 1).pow(2));
        for n in -r..=r {
            for m in -r..=r {
                values.push(f(n, m));
            }
        }
        Self { radius, values }
    }

    pub fn delta(radius: usize, n0: i64, m0: i64) -> Self {
        Self::from_fn(radius, |n, m| {
            if (n, m) == (n0, m0) {
                Complex64::new(1.0, 0.0)
            } else {
                ZERO
            }
        })
    }

    pub fn constant(radius: usize, c: Complex64) -> Self {
        Self::from_fn(radius, |_, _| c)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, n: i64, m: i64) -> Complex64 {
        let r = self.radius as i64;
        if n < -r || n > r || m < -r || m > r {
            ZERO
        } else {
            self.values[((n + r) as usize) * self.side() + (m + r) as usize]
        }
    }

    pub fn set(&mut self, n: i64, m: i64, v: Complex64) {
        let r = self.radius as i64;
        assert!(n.abs() <= r && m.abs() <= r, "index ({n}, {m}) outside radius {r}");
        let side = self.side();
        self.values[((n + r) as usize) * side + (m + r) as usize] = v;
    }

    /// Iterates `(n, m, value)` over the stored box.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, Complex64)> + '_ {
        let r = self.radius as i64;
        let side = self.side();
        self.values.iter().enumerate().map(move |(idx, &v)| {
            ((idx / side) as i64 - r, (idx % side) as i64 - r, v)
        })
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        norms::sequence_norm(&self.values, p)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            radius: self.radius,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let r = self.radius.max(other.radius) as i64;
        let mut worst = 0.0f64;
        for n in -r..=r {
            for m in -r..=r {
                worst = worst.max((self.get(n, m) - other.get(n, m)).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_range_reads_zero() {
        let a = FiniteSequence::delta(2, 1);
        assert_eq!(a.get(1), Complex64::new(1.0, 0.0));
        assert_eq!(a.get(7), ZERO);
        assert_eq!(a.support_radius(), 1);

        let phi = FiniteSequence2D::delta(1, -1, 1);
        assert_eq!(phi.get(-1, 1), Complex64::new(1.0, 0.0));
        assert_eq!(phi.get(5, 0), ZERO);
        let seen: Vec<_> = phi.entries().filter(|e| e.2 != ZERO).collect();
        assert_eq!(seen, vec![(-1, 1, Complex64::new(1.0, 0.0))]);
    }

    #[test]
    fn transform_of_delta_is_a_character() {
        let a = FiniteSequence::delta(3, 2);
        let v = a.transform_at(0.125);
        let expected = Complex64::cis(-2.0 * std::f64::consts::PI * 0.25);
        assert!((v - expected).norm() < 1e-15);
    }
}
