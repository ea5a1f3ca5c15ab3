//! The bilinear multiplier operators on the line, the circle and the
//! integers, the kernel-series form of a periodic symbol, and a direct
//! principal-value quadrature for the bilinear Hilbert transform.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::numerics::{
    dft_forward, FiniteSequence, FiniteSequence2D, Grid1D, PeriodicFunction, SampledFunction,
};
use crate::symbols::Symbol2D;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Guard factor between quadrature nodes and the output index range of
/// [`apply_on_integers`].
pub const NYQUIST_GUARD: usize = 4;

fn parity(s: i64) -> f64 {
    if s.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A line multiplier with its symbol tabulated on the dual grid,
/// `table[i * N + l] = ψ(ξ_i, ξ_l)`. Reusable across many input pairs.
#[derive(Debug, Clone)]
pub struct LineOperator {
    grid: Grid1D,
    table: Vec<Complex64>,
}

impl LineOperator {
    pub fn new(psi: &Symbol2D, grid: Grid1D) -> Result<Self> {
        let n = grid.len();
        let freqs: Vec<f64> = grid.frequencies().collect();
        let table: Vec<Complex64> = (0..n * n)
            .into_par_iter()
            .map(|idx| psi.eval(freqs[idx / n], freqs[idx % n]))
            .collect();
        if let Some(idx) = table.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite {
                xi: freqs[idx / n],
                eta: freqs[idx % n],
            });
        }
        Ok(Self { grid, table })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    fn check_inputs(&self, f: &SampledFunction, g: &SampledFunction) -> Result<()> {
        if *f.grid() != self.grid || *g.grid() != self.grid {
            return Err(Error::GridMismatch(
                "inputs must live on the operator's grid".into(),
            ));
        }
        Ok(())
    }

    /// Diagonal sums `u(s) = Σ_k f^(ξ_k) g^(ξ_{s-k}) ψ(ξ_k, ξ_{s-k})` over the
    /// doubled frequency range, followed by one inverse transform.
    pub fn apply(&self, f: &SampledFunction, g: &SampledFunction) -> Result<SampledFunction> {
        self.check_inputs(f, g)?;
        let n = self.grid.len();
        let fhat = dft_forward(f);
        let ghat = dft_forward(g);
        let (fv, gv) = (fhat.values(), ghat.values());

        // d = i + l indexes the sum of centered positions, s = d - N.
        let diag: Vec<Complex64> = (0..2 * n - 1)
            .into_par_iter()
            .map(|d| {
                let lo = d.saturating_sub(n - 1);
                let hi = d.min(n - 1);
                let mut acc = ZERO;
                for i in lo..=hi {
                    let l = d - i;
                    acc += fv[i] * gv[l] * self.table[i * n + l];
                }
                acc
            })
            .collect();

        // e^{2πi x_j s Δξ} = (-1)^s e^{2πi j s / N}: fold s mod N.
        let mut buf = vec![ZERO; n];
        for (d, u) in diag.into_iter().enumerate() {
            let s = d as i64 - n as i64;
            buf[s.rem_euclid(n as i64) as usize] += u * parity(s);
        }
        FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
        let w = self.grid.freq_spacing().powi(2);
        for v in &mut buf {
            *v *= w;
        }
        SampledFunction::new(self.grid, buf)
    }

    /// Reference evaluation: for every output point, the full double sum over
    /// `(ξ_k, ξ_l)` with explicitly tabulated exponentials. Cubic in `N`.
    pub fn apply_direct(&self, f: &SampledFunction, g: &SampledFunction) -> Result<SampledFunction> {
        self.check_inputs(f, g)?;
        let n = self.grid.len();
        let fhat = dft_forward(f);
        let ghat = dft_forward(g);
        let (fv, gv) = (fhat.values(), ghat.values());
        let w = self.grid.freq_spacing().powi(2);
        let out: Vec<Complex64> = (0..n)
            .into_par_iter()
            .map(|j| {
                let x = self.grid.point(j);
                let phase: Vec<Complex64> = (0..n)
                    .map(|k| Complex64::cis(2.0 * PI * x * self.grid.frequency(k)))
                    .collect();
                let mut acc = ZERO;
                for k in 0..n {
                    let row = &self.table[k * n..(k + 1) * n];
                    let mut inner = ZERO;
                    for l in 0..n {
                        inner += gv[l] * row[l] * phase[l];
                    }
                    acc += fv[k] * phase[k] * inner;
                }
                acc * w
            })
            .collect();
        SampledFunction::new(self.grid, out)
    }
}

/// `C_ψ(f, g)(x) = ∫∫ f^(ξ) g^(η) ψ(ξ, η) e^{2πix(ξ+η)} dξ dη`, discretized on
/// the dual grid of `f` and `g`.
pub fn apply_on_line(
    psi: &Symbol2D,
    f: &SampledFunction,
    g: &SampledFunction,
) -> Result<SampledFunction> {
    f.ensure_same_grid(g)?;
    LineOperator::new(psi, *f.grid())?.apply(f, g)
}

/// Triple-loop evaluation of [`apply_on_line`].
pub fn apply_on_line_direct(
    psi: &Symbol2D,
    f: &SampledFunction,
    g: &SampledFunction,
) -> Result<SampledFunction> {
    f.ensure_same_grid(g)?;
    LineOperator::new(psi, *f.grid())?.apply_direct(f, g)
}

/// `P(F, G)(x) = Σ_n Σ_m F^(n) G^(m) φ(n, m) e^{2πix(n+m)}`.
pub fn apply_on_torus(
    phi: &FiniteSequence2D,
    f: &PeriodicFunction,
    g: &PeriodicFunction,
) -> PeriodicFunction {
    let (df, dg) = (f.degree() as i64, g.degree() as i64);
    let degree = (df + dg) as usize;
    PeriodicFunction::from_coeff_fn(degree, |s| {
        let lo = (-df).max(s - dg);
        let hi = df.min(s + dg);
        (lo..=hi).map(|n| f.coeff(n) * g.coeff(s - n) * phi.get(n, s - n)).sum()
    })
}

/// `D(a, b)(l) = ∫∫_{T²} a^(θ) b^(ρ) ψ(θ, ρ) e^{2πil(θ+ρ)} dθ dρ` for
/// `|l| <= window`, by the rectangle rule on `nodes x nodes` points
/// `θ_r = r / nodes`.
pub fn apply_on_integers(
    psi: &Symbol2D,
    a: &FiniteSequence,
    b: &FiniteSequence,
    nodes: usize,
    window: usize,
) -> Result<FiniteSequence> {
    if !psi.is_periodic() {
        return Err(Error::Domain(format!(
            "symbol {} must be 1-periodic in both variables",
            psi.name()
        )));
    }
    let needed = NYQUIST_GUARD * (a.support_radius() + b.support_radius() + window);
    if nodes < needed.max(1) {
        return Err(Error::Config(format!(
            "{nodes} quadrature nodes per axis is below the guard {needed} = {NYQUIST_GUARD} * (radius(a) + radius(b) + window)"
        )));
    }
    let q = nodes;
    let theta = |r: usize| r as f64 / q as f64;
    let ahat: Vec<Complex64> = (0..q).map(|r| a.transform_at(theta(r))).collect();
    let bhat: Vec<Complex64> = (0..q).map(|r| b.transform_at(theta(r))).collect();

    let diag: Vec<Complex64> = (0..q)
        .into_par_iter()
        .map(|t| {
            let mut acc = ZERO;
            for r in 0..q {
                let s = (t + q - r) % q;
                let v = psi.eval(theta(r), theta(s));
                acc += ahat[r] * bhat[s] * v;
            }
            acc
        })
        .collect();
    if let Some(t) = diag.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite { xi: theta(t), eta: 0.0 });
    }

    let w = 1.0 / (q * q) as f64;
    Ok(FiniteSequence::from_fn(window, |l| {
        diag.iter()
            .enumerate()
            .map(|(t, &u)| u * Complex64::cis(2.0 * PI * ((l * t as i64).rem_euclid(q as i64)) as f64 / q as f64))
            .sum::<Complex64>()
            * w
    }))
}

/// Fourier coefficients of a periodic symbol together with a truncation proxy.
#[derive(Debug, Clone)]
pub struct KernelTable {
    pub coeffs: FiniteSequence2D,
    /// `max |K_{n,m}|` over the outermost ring `max(|n|, |m|) = R`.
    pub edge_magnitude: f64,
    pub nodes: usize,
}

/// `K_{n,m} = ∫_0^1 ∫_0^1 ψ(ξ, η) e^{2πi(ξn + ηm)} dξ dη` for `|n|, |m| <= radius`,
/// by the `nodes x nodes` rectangle rule evaluated with a 2-D FFT.
pub fn kernel_coefficients(psi: &Symbol2D, radius: usize, nodes: usize) -> Result<KernelTable> {
    if !psi.is_periodic() {
        return Err(Error::Domain(format!(
            "symbol {} must be 1-periodic in both variables",
            psi.name()
        )));
    }
    if nodes < 2 * radius + 1 {
        return Err(Error::Config(format!(
            "{nodes} nodes cannot resolve coefficients up to |n| = {radius}"
        )));
    }
    let q = nodes;
    let mut grid: Vec<Complex64> = (0..q * q)
        .into_par_iter()
        .map(|idx| psi.eval((idx / q) as f64 / q as f64, (idx % q) as f64 / q as f64))
        .collect();
    if let Some(idx) = grid.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite {
            xi: (idx / q) as f64 / q as f64,
            eta: (idx % q) as f64 / q as f64,
        });
    }

    let fft = FftPlanner::new().plan_fft_inverse(q);
    for row in grid.chunks_mut(q) {
        fft.process(row);
    }
    let mut column = vec![ZERO; q];
    for c in 0..q {
        for r in 0..q {
            column[r] = grid[r * q + c];
        }
        fft.process(&mut column);
        for r in 0..q {
            grid[r * q + c] = column[r];
        }
    }
    let w = 1.0 / (q * q) as f64;
    let at = |n: i64, m: i64| {
        let r = n.rem_euclid(q as i64) as usize;
        let c = m.rem_euclid(q as i64) as usize;
        grid[r * q + c] * w
    };
    let coeffs = FiniteSequence2D::from_fn(radius, at);
    let rr = radius as i64;
    let edge_magnitude = coeffs
        .entries()
        .filter(|&(n, m, _)| n.abs() == rr || m.abs() == rr)
        .map(|(_, _, v)| v.norm())
        .fold(0.0, f64::max);
    Ok(KernelTable {
        coeffs,
        edge_magnitude,
        nodes,
    })
}

#[derive(Debug, Clone)]
pub struct KernelSeriesOutput {
    pub output: SampledFunction,
    /// Set when some nonzero term shifted input mass past the grid window.
    pub truncated: bool,
}

fn nonzero_span(values: &[Complex64]) -> Option<(usize, usize)> {
    let first = values.iter().position(|v| *v != ZERO)?;
    let last = values.iter().rposition(|v| *v != ZERO)?;
    Some((first, last))
}

/// `Σ_n Σ_m K_{n,m} f(x - n) g(x - m)` on a grid containing the integers.
/// Inputs are zero outside the window.
pub fn apply_kernel_series(
    kernel: &FiniteSequence2D,
    f: &SampledFunction,
    g: &SampledFunction,
) -> Result<KernelSeriesOutput> {
    f.ensure_same_grid(g)?;
    let grid = *f.grid();
    let spu = grid
        .samples_per_unit()
        .filter(|_| grid.contains_integers())
        .ok_or_else(|| Error::Config("kernel series needs a grid containing the integers".into()))?
        as i64;
    let len = grid.len() as i64;
    let r = kernel.radius() as i64;
    let fspan = nonzero_span(f.values());
    let gspan = nonzero_span(g.values());
    let leaves = |span: Option<(usize, usize)>, shift: i64| {
        span.is_some_and(|(lo, hi)| lo as i64 + shift < 0 || hi as i64 + shift >= len)
    };

    let f_shifts: Vec<SampledFunction> = (-r..=r).map(|n| f.translate(n * spu)).collect();
    let g_shifts: Vec<SampledFunction> = (-r..=r).map(|m| g.translate(m * spu)).collect();
    let mut out = vec![ZERO; grid.len()];
    let mut truncated = false;
    for (n, m, k) in kernel.entries() {
        if k == ZERO {
            continue;
        }
        truncated |= leaves(fspan, n * spu) || leaves(gspan, m * spu);
        let fs = f_shifts[(n + r) as usize].values();
        let gs = g_shifts[(m + r) as usize].values();
        for ((o, a), b) in out.iter_mut().zip(fs).zip(gs) {
            *o += k * a * b;
        }
    }
    Ok(KernelSeriesOutput {
        output: SampledFunction::new(grid, out)?,
        truncated,
    })
}

/// Principal-value quadrature of `p.v. ∫ f(x - t) g(x + t) dt / t`.
///
/// The `±t` nodes are paired, so the integrand is the even function
/// `F(t) = (f(x-t)g(x+t) - f(x+t)g(x-t)) / t` and constant inputs cancel
/// exactly. Nodes `t = r h` with `t >= cutoff` are summed by the trapezoid
/// rule; the excluded core `(-cutoff, cutoff)` contributes `cutoff * F(cutoff)`
/// on top of the end weight of the first kept node.
/// Samples outside the window count as zero.
pub fn bht_time_domain(
    f: &SampledFunction,
    g: &SampledFunction,
    cutoff: f64,
) -> Result<SampledFunction> {
    f.ensure_same_grid(g)?;
    let grid = *f.grid();
    let h = grid.spacing();
    if !(cutoff >= h * (1.0 - 1e-12)) {
        return Err(Error::Config(format!(
            "principal-value cutoff {cutoff} must be at least the grid spacing {h}"
        )));
    }
    let r0 = ((cutoff / h).round() as usize).max(1);
    let eps = r0 as f64 * h;
    let n = grid.len() as i64;
    let (fv, gv) = (f.values(), g.values());
    let at = |v: &[Complex64], j: i64| if (0..n).contains(&j) { v[j as usize] } else { ZERO };
    let out: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let pair = |r: i64| {
                let t = r as f64 * h;
                (at(fv, j - r) * at(gv, j + r) - at(fv, j + r) * at(gv, j - r)) / t
            };
            let r0 = r0 as i64;
            let mut acc = ZERO;
            for r in r0 + 1..n {
                acc += pair(r);
            }
            acc * h + pair(r0) * (0.5 * h + eps)
        })
        .collect();
    SampledFunction::new(grid, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{bht, character, constant, tent, SupportBox};
    use crate::transference::periodize_symbol;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn gaussian(grid: Grid1D, center: f64, width: f64) -> SampledFunction {
        SampledFunction::from_real_fn(grid, |x| (-PI * ((x - center) / width).powi(2)).exp()).unwrap()
    }

    fn random_function(grid: Grid1D, rng: &mut ChaCha8Rng) -> SampledFunction {
        let w = rng.random_range(0.5..1.5);
        let x0 = rng.random_range(-1.0..1.0);
        let freq = rng.random_range(-1.0..1.0);
        SampledFunction::from_fn(grid, |x| {
            Complex64::cis(2.0 * PI * freq * x) * (-PI * ((x - x0) / w).powi(2)).exp()
        })
        .unwrap()
    }

    fn random_symbol(seed: u64) -> Symbol2D {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, w) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(0.5..2.0));
        Symbol2D::new("random", 1.0, move |xi, eta| {
            Complex64::cis(a * xi + b * eta) * (-(xi * xi + eta * eta) / w).exp()
        })
    }

    fn relative_gap(a: &SampledFunction, b: &SampledFunction) -> f64 {
        let scale = b.values().iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
        a.max_abs_diff(b).unwrap() / scale
    }

    #[test]
    fn constant_symbol_gives_product() {
        let grid = Grid1D::with_resolution(8.0, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (f, g) = (random_function(grid, &mut rng), random_function(grid, &mut rng));
        let out = apply_on_line(&constant(c(1.0)), &f, &g).unwrap();
        assert!(out.max_abs_diff(&f.mul(&g).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn character_symbol_translates() {
        let grid = Grid1D::with_resolution(8.0, 16).unwrap();
        let (f, g) = (gaussian(grid, 0.3, 1.0), gaussian(grid, -0.2, 0.7));
        let (a, b) = (0.5, -1.25);
        let out = apply_on_line(&character(a, b), &f, &g).unwrap();
        let expected = f.translate(-8).mul(&g.translate(20)).unwrap();
        assert!(out.max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn fast_and_direct_paths_agree() {
        let grid = Grid1D::new(4.0, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (f, g) = (random_function(grid, &mut rng), random_function(grid, &mut rng));
        for psi in [bht(), tent(), random_symbol(3), constant(Complex64::new(0.3, -2.0))] {
            let op = LineOperator::new(&psi, grid).unwrap();
            let fast = op.apply(&f, &g).unwrap();
            let slow = op.apply_direct(&f, &g).unwrap();
            assert!(relative_gap(&fast, &slow) < 1e-10, "{}", psi.name());
        }
    }

    #[test]
    fn grid_mismatch_and_non_finite_symbols_are_rejected() {
        let a = Grid1D::new(4.0, 64).unwrap();
        let b = Grid1D::new(4.0, 32).unwrap();
        assert!(matches!(
            apply_on_line(&tent(), &gaussian(a, 0.0, 1.0), &gaussian(b, 0.0, 1.0)),
            Err(Error::GridMismatch(_))
        ));
        let bad = Symbol2D::new("pole", 1.0, |xi, _| c(1.0 / xi));
        assert!(matches!(LineOperator::new(&bad, a), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn translation_commutes() {
        let grid = Grid1D::with_resolution(8.0, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (f, g) = (random_function(grid, &mut rng), random_function(grid, &mut rng));
        for psi in [bht(), tent(), random_symbol(5)] {
            let op = LineOperator::new(&psi, grid).unwrap();
            let base = op.apply(&f, &g).unwrap();
            let moved = op.apply(&f.translate(5), &g.translate(5)).unwrap();
            // Compare away from the edges, where the cyclic and zero-extended shifts differ.
            let shifted = base.translate(5);
            let n = grid.len();
            let gap = (n / 4..3 * n / 4)
                .map(|j| (moved.values()[j] - shifted.values()[j]).norm())
                .fold(0.0, f64::max);
            assert!(gap < 1e-8, "{}: {gap}", psi.name());
        }
    }

    fn random_periodic(rng: &mut ChaCha8Rng, degree: usize) -> PeriodicFunction {
        PeriodicFunction::from_coeff_fn(degree, |_| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    #[test]
    fn torus_constant_multiplier_is_pointwise_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (f, g) = (random_periodic(&mut rng, 3), random_periodic(&mut rng, 2));
        let out = apply_on_torus(&FiniteSequence2D::constant(3, c(1.0)), &f, &g);
        assert_eq!(out.degree(), 5);
        for r in 0..64 {
            let x = -0.5 + r as f64 / 64.0;
            assert!((out.eval(x) - f.eval(x) * g.eval(x)).norm() < 1e-12);
        }
    }

    #[test]
    fn torus_delta_multiplier_is_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (f, g) = (random_periodic(&mut rng, 3), random_periodic(&mut rng, 3));
        let out = apply_on_torus(&FiniteSequence2D::delta(0, 0, 0), &f, &g);
        for s in -6..=6i64 {
            let expected = if s == 0 { f.coeff(0) * g.coeff(0) } else { c(0.0) };
            assert_eq!(out.coeff(s), expected);
        }
    }

    #[test]
    fn torus_matches_direct_double_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let phi = FiniteSequence2D::from_fn(2, |_, _| Complex64::new(rng.random(), rng.random()));
        let (f, g) = (random_periodic(&mut rng, 2), random_periodic(&mut rng, 2));
        let out = apply_on_torus(&phi, &f, &g);
        for r in 0..64 {
            let x = -0.5 + r as f64 / 64.0;
            let mut direct = c(0.0);
            for n in -2..=2i64 {
                for m in -2..=2i64 {
                    direct += f.coeff(n) * g.coeff(m) * phi.get(n, m) * Complex64::cis(2.0 * PI * x * (n + m) as f64);
                }
            }
            assert!((out.eval(x) - direct).norm() < 1e-12);
        }
    }

    fn random_sequence(rng: &mut ChaCha8Rng, radius: usize) -> FiniteSequence {
        FiniteSequence::from_fn(radius, |_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    #[test]
    fn integers_constant_symbol_is_pointwise_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (a, b) = (random_sequence(&mut rng, 3), random_sequence(&mut rng, 2));
        let d = apply_on_integers(&constant(c(1.0)), &a, &b, 64, 5).unwrap();
        for l in -5..=5 {
            assert!((d.get(l) - a.get(l) * b.get(l)).norm() < 1e-13);
        }
    }

    #[test]
    fn integers_character_shifts() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let (a, b) = (random_sequence(&mut rng, 3), random_sequence(&mut rng, 3));
        let (j, k) = (2, -1);
        let d = apply_on_integers(&character(j as f64, k as f64), &a, &b, 64, 5).unwrap();
        for l in -5..=5i64 {
            assert!((d.get(l) - a.get(l + j) * b.get(l + k)).norm() < 1e-13);
        }
    }

    #[test]
    fn integers_guard_and_periodicity() {
        let a = FiniteSequence::delta(2, 0);
        assert!(matches!(apply_on_integers(&constant(c(1.0)), &a, &a, 7, 2), Err(Error::Config(_))));
        assert!(matches!(apply_on_integers(&tent(), &a, &a, 64, 2), Err(Error::Domain(_))));
    }

    fn periodic_bht() -> Symbol2D {
        periodize_symbol(&bht().with_support(SupportBox::square(-0.5, 0.5))).unwrap()
    }

    #[test]
    fn integers_deltas_give_kernel_coefficients() {
        let psi = periodic_bht();
        let delta = FiniteSequence::delta(0, 0);
        let d = apply_on_integers(&psi, &delta, &delta, 64, 4).unwrap();
        let k = kernel_coefficients(&psi, 8, 64).unwrap();
        for l in -4..=4 {
            assert!((d.get(l) - k.coeffs.get(l, l)).norm() < 1e-14);
        }
    }

    #[test]
    fn kernel_of_constant_and_characters() {
        let k = kernel_coefficients(&constant(c(1.0)), 3, 16).unwrap();
        assert!(k.coeffs.max_abs_diff(&FiniteSequence2D::delta(3, 0, 0)) < 1e-15);
        assert!(k.edge_magnitude < 1e-15);
        // e^{-2πi(ξ n0 + η m0)} against the e^{+2πi} kernel picks out (n0, m0).
        let (n0, m0) = (2, -1);
        let k = kernel_coefficients(&character(-(n0 as f64), -(m0 as f64)), 3, 16).unwrap();
        assert!(k.coeffs.max_abs_diff(&FiniteSequence2D::from_fn(3, |n, m| {
            if (n, m) == (n0, m0) { c(1.0) } else { c(0.0) }
        })) < 1e-14);
        assert!(kernel_coefficients(&tent(), 3, 16).is_err());
        assert!(kernel_coefficients(&constant(c(1.0)), 10, 16).is_err());
    }

    #[test]
    fn kernel_of_periodized_tent_is_fejer_product() {
        let psi = crate::symbols::by_id("tent-periodized").unwrap();
        let k = kernel_coefficients(&psi, 6, 128).unwrap();
        // One period of the half tent (1 - 2|ξ|)_+ ... periodized: c_n = (1/2) sinc²(n/2).
        let coef = |n: i64| {
            if n == 0 {
                0.5
            } else {
                let t = PI * n as f64 / 2.0;
                0.5 * (t.sin() / t).powi(2)
            }
        };
        for (n, m, v) in k.coeffs.entries() {
            assert!(v.im.abs() < 1e-12 && v.re > -1e-12);
            assert!((v.re - coef(n) * coef(m)).abs() < 1e-4, "({n},{m})");
        }
    }

    #[test]
    fn kernel_series_single_terms() {
        let grid = Grid1D::with_resolution(8.0, 8).unwrap();
        let (f, g) = (gaussian(grid, 0.0, 1.0), gaussian(grid, 0.5, 0.5));
        let out = apply_kernel_series(&FiniteSequence2D::delta(1, 0, 0), &f, &g).unwrap();
        assert_eq!(out.output.max_abs_diff(&f.mul(&g).unwrap()).unwrap(), 0.0);
        let shifted = apply_kernel_series(&FiniteSequence2D::delta(1, 1, 0), &f, &g).unwrap();
        assert_eq!(shifted.output.max_abs_diff(&f.translate(8).mul(&g).unwrap()).unwrap(), 0.0);
        assert!(shifted.truncated, "Gaussian tails reach the window edge");

        let narrow = SampledFunction::from_real_fn(grid, |x| if x.abs() < 1.0 { 1.0 - x.abs() } else { 0.0 }).unwrap();
        let inside = apply_kernel_series(&FiniteSequence2D::delta(2, 2, -1), &narrow, &narrow).unwrap();
        assert!(!inside.truncated);
        let far = apply_kernel_series(&FiniteSequence2D::delta(8, 8, 0), &narrow, &narrow).unwrap();
        assert!(far.truncated);
        let off = Grid1D::new(1.25, 4).unwrap();
        let z = SampledFunction::zeros(off);
        assert!(apply_kernel_series(&FiniteSequence2D::delta(0, 0, 0), &z, &z).is_err());
    }

    #[test]
    fn bht_time_domain_cancels_constants() {
        let grid = Grid1D::with_resolution(16.0, 8).unwrap();
        let one = SampledFunction::from_real_fn(grid, |_| 2.0).unwrap();
        let two = SampledFunction::from_real_fn(grid, |_| -3.0).unwrap();
        let out = bht_time_domain(&one, &two, grid.spacing()).unwrap();
        assert_eq!(out.values()[grid.len() / 2], c(0.0));
        assert!(bht_time_domain(&one, &two, grid.spacing() / 2.0).is_err());
    }

    /// Dawson's integral `e^{-y²} ∫_0^y e^{t²} dt` by composite Simpson.
    fn dawson(y: f64) -> f64 {
        let n = 2000;
        let h = y / n as f64;
        let mut acc = 0.0;
        for r in 0..=n {
            let t = r as f64 * h;
            let w = if r == 0 || r == n { 1.0 } else if r % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * (t * t - y * y).exp();
        }
        acc * h / 3.0
    }

    #[test]
    fn bht_time_domain_recovers_hilbert_transform_of_gaussian() {
        // With g ≡ 1 the integral is π H f, and H e^{-πx²} = (2/√π) F(√π x).
        let grid = Grid1D::with_resolution(8.0, 128).unwrap();
        let f = gaussian(grid, 0.0, 1.0);
        let one = SampledFunction::from_real_fn(grid, |_| 1.0).unwrap();
        let out = bht_time_domain(&f, &one, grid.spacing()).unwrap();
        for x in [-1.5, -0.5, 0.0, 0.25, 1.0, 2.0] {
            let j = ((x + 8.0) * 128.0) as usize;
            let expected = PI * 2.0 / PI.sqrt() * dawson(PI.sqrt() * x);
            assert!((out.values()[j].re - expected).abs() < 1e-4, "x = {x}: {} vs {expected}", out.values()[j].re);
        }
    }

    #[test]
    fn bht_frequency_and_time_sides_agree() {
        let grid = Grid1D::new(8.0, 1024).unwrap();
        let (f, g) = (gaussian(grid, 0.0, 1.0), gaussian(grid, 0.3, 0.8));
        let freq = apply_on_line(&bht(), &f, &g).unwrap();
        let time = bht_time_domain(&f, &g, grid.spacing()).unwrap().scale(c(1.0 / PI));
        assert!(relative_gap(&time, &freq) < 1e-2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn line_operator_is_bilinear(seed in 0u64..1000, alpha_re in -2.0f64..2.0, alpha_im in -2.0f64..2.0) {
            let grid = Grid1D::new(4.0, 64).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (f1, f2, g) = (random_function(grid, &mut rng), random_function(grid, &mut rng), random_function(grid, &mut rng));
            let alpha = Complex64::new(alpha_re, alpha_im);
            let op = LineOperator::new(&random_symbol(seed), grid).unwrap();
            let lhs = op.apply(&f2.axpy(alpha, &f1).unwrap(), &g).unwrap();
            let rhs = op.apply(&f2, &g).unwrap().axpy(alpha, &op.apply(&f1, &g).unwrap()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
            let lhs = op.apply(&g, &f2.axpy(alpha, &f1).unwrap()).unwrap();
            let rhs = op.apply(&g, &f2).unwrap().axpy(alpha, &op.apply(&g, &f1).unwrap()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
        }

        #[test]
        fn torus_operator_is_bilinear(seed in 0u64..1000, alpha in -2.0f64..2.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let phi = FiniteSequence2D::from_fn(3, |_, _| Complex64::new(rng.random(), rng.random()));
            let (f1, f2, g) = (random_periodic(&mut rng, 3), random_periodic(&mut rng, 3), random_periodic(&mut rng, 2));
            let combo = PeriodicFunction::from_coeff_fn(3, |n| f1.coeff(n) * alpha + f2.coeff(n));
            let lhs = apply_on_torus(&phi, &combo, &g);
            let (o1, o2) = (apply_on_torus(&phi, &f1, &g), apply_on_torus(&phi, &f2, &g));
            let rhs = PeriodicFunction::from_coeff_fn(5, |s| o1.coeff(s) * alpha + o2.coeff(s));
            prop_assert!(lhs.max_coeff_diff(&rhs) < 1e-12);
        }

        #[test]
        fn integer_operator_is_bilinear(seed in 0u64..1000, alpha in -2.0f64..2.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a1, a2, b) = (random_sequence(&mut rng, 2), random_sequence(&mut rng, 2), random_sequence(&mut rng, 2));
            let psi = periodic_bht();
            let combo = FiniteSequence::from_fn(2, |k| a1.get(k) * alpha + a2.get(k));
            let lhs = apply_on_integers(&psi, &combo, &b, 32, 3).unwrap();
            let (d1, d2) = (apply_on_integers(&psi, &a1, &b, 32, 3).unwrap(), apply_on_integers(&psi, &a2, &b, 32, 3).unwrap());
            for l in -3..=3 {
                prop_assert!((lhs.get(l) - (d1.get(l) * alpha + d2.get(l))).norm() < 1e-10);
            }
        }
    }
}
