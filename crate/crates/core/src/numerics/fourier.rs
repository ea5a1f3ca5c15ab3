//! Grid Fourier transforms with the `e^{-2 pi i x xi}` convention, Poisson
//! periodization, and sampling at the integers.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::Grid1D;
use super::periodic::PeriodicFunction;
use super::sampled::{SampledFunction, Spectrum};
use super::sequence::FiniteSequence;
use crate::error::{Error, Result};

/// Tail mass tolerated by [`periodize`], relative to the total mass.
pub const PERIODIZE_TAIL_TOLERANCE: f64 = 1e-8;

fn sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `f^(xi_k) = h * sum_j f(x_j) e^{-2 pi i x_j xi_k}` on the dual grid.
///
/// Since `x_j xi_k = -k/2 + jk/N`, this is `h (-1)^k` times a length-`N`
/// FFT read at `k mod N`.
pub fn dft_forward(f: &SampledFunction) -> Spectrum {
    let grid = *f.grid();
    let n = grid.len();
    let mut buf = f.values().to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let h = grid.spacing();
    let values = (0..n)
        .map(|i| {
            let k = grid.freq_index(i);
            buf[k.rem_euclid(n as i64) as usize] * (h * sign(k))
        })
        .collect();
    Spectrum::new(grid, values).expect("length preserved")
}

/// `f(x_j) = dxi * sum_k f^(xi_k) e^{2 pi i x_j xi_k}`; exact inverse of [`dft_forward`].
pub fn dft_inverse(fhat: &Spectrum) -> SampledFunction {
    let grid = *fhat.grid();
    let n = grid.len();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (i, &v) in fhat.values().iter().enumerate() {
        let k = grid.freq_index(i);
        buf[k.rem_euclid(n as i64) as usize] = v * sign(k);
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let dxi = grid.freq_spacing();
    for v in &mut buf {
        *v *= dxi;
    }
    SampledFunction::new(grid, buf).expect("finite input gives finite output")
}

/// Transform sample `h * sum_j f(x_j) e^{-2 pi i x_j xi}` at an arbitrary frequency.
pub fn transform_at(f: &SampledFunction, xi: f64) -> Complex64 {
    let grid = f.grid();
    let h = grid.spacing();
    f.values()
        .iter()
        .enumerate()
        .map(|(j, &v)| v * Complex64::cis(-2.0 * PI * grid.point(j) * xi))
        .sum::<Complex64>()
        * h
}

/// Relative mass of `f` in the outer eighth of the window on each side.
pub fn tail_fraction(f: &SampledFunction) -> f64 {
    let grid = f.grid();
    let cut = 0.875 * grid.half_width();
    let mut total = 0.0;
    let mut tail = 0.0;
    for (j, v) in f.values().iter().enumerate() {
        let a = v.norm();
        total += a;
        if grid.point(j).abs() >= cut {
            tail += a;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        tail / total
    }
}

/// Periodization `sum_n f(x + n)` as a degree-`degree` trigonometric polynomial.
///
/// By Poisson summation the `k`-th coefficient of the periodization is the
/// transform sample `f^(k)`.
pub fn periodize(f: &SampledFunction, degree: usize) -> Result<PeriodicFunction> {
    let tail = tail_fraction(f);
    if tail > PERIODIZE_TAIL_TOLERANCE {
        return Err(Error::Accuracy {
            what: "function does not decay inside the grid window",
            measured: tail,
            tolerance: PERIODIZE_TAIL_TOLERANCE,
        });
    }
    Ok(PeriodicFunction::from_coeff_fn(degree, |k| transform_at(f, k as f64)))
}

/// `f(n)` for `|n| <= radius`; every such integer must be a grid point.
pub fn sample_at_integers(f: &SampledFunction, radius: usize) -> Result<FiniteSequence> {
    let grid: &Grid1D = f.grid();
    let r = radius as i64;
    let mut out = FiniteSequence::zeros(radius);
    for n in -r..=r {
        let j = grid.integer_index(n).ok_or_else(|| {
            Error::Config(format!(
                "integer {n} is not a grid point (L = {}, N = {})",
                grid.half_width(),
                grid.len()
            ))
        })?;
        out.set(n, f.values()[j]);
    }
    Ok(out)
}
