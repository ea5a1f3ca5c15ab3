//! Checks that live on the line: band limitation, sampling, the bilinear
//! Hilbert transform cross-check, the failure at `p1 = 1`, and timing.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::norms::power_sum;
use crate::numerics::{dft_forward, dft_inverse, sample_at_integers, ExponentTriple, FiniteSequence, FiniteSequence2D, Grid1D, SampledFunction, Spectrum};
use crate::operators::{apply_on_line, bht_time_domain, LineOperator};
use crate::symbols::{bht, constant, plateau, SupportBox, Symbol2D};
use crate::transference::piecewise_constant_extend;

use super::report::{CheckOutcome, InequalityReport};

pub const SUPPORT_REF: &str = "band limitation: supp of the output transform lies in [-2,2]";
pub const SAMPLING_REF: &str = "sampling: sum_n |g(n)|^p <= C^p max(1,R) int |g|^p";
pub const BHT_REF: &str = "bilinear Hilbert transform: p.v. int f(x-t) g(x+t) dt/t";
pub const REMARK_REF: &str = "piecewise extension fails at p1 = 1 for nonconstant phi";
pub const PERFORMANCE_REF: &str = "fast diagonal-sum evaluation of C_psi";

/// Energy fraction of `dft_forward(C_ψ(f, g))` outside `[-2, 2]`, for a
/// symbol supported in `[-1/2, 1/2]²`.
pub fn check_support_lemma(psi: &Symbol2D, f: &SampledFunction, g: &SampledFunction, tolerance: f64) -> Result<CheckOutcome> {
    let inside = psi.support().is_some_and(|s| s.is_inside(&SupportBox::square(-0.5, 0.5)));
    if !inside {
        return Err(Error::Domain(format!("{} is not supported in [-1/2, 1/2]^2", psi.name())));
    }
    let out = apply_on_line(psi, f, g)?;
    let fraction = dft_forward(&out).energy_fraction_outside(2.0);
    let mut o = CheckOutcome::new("support-lemma");
    o.push(InequalityReport::new("support-lemma", SUPPORT_REF, fraction, 1.0, tolerance, 0.0).with_note(psi.name().to_string()));
    Ok(o)
}

/// Band-limited test functions built from their grid spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandLimited {
    /// Indicator spectrum on `[-R, R)`.
    Dirichlet { band: f64 },
    /// Smooth plateau spectrum, 1 on `|ξ| <= R/2`, 0 beyond `R`.
    Smooth { band: f64 },
    /// Triangle spectrum `(1 - |ξ|/R)_+`, a squared sinc in time.
    Triangle { band: f64 },
}

impl BandLimited {
    pub fn band(&self) -> f64 {
        match *self {
            Self::Dirichlet { band } | Self::Smooth { band } | Self::Triangle { band } => band,
        }
    }

    pub fn build(&self, grid: Grid1D) -> SampledFunction {
        let spectrum = Spectrum::from_fn(grid, |xi| {
            let v = match *self {
                Self::Dirichlet { band } => {
                    if (-band..band).contains(&xi) {
                        1.0
                    } else {
                        0.0
                    }
                }
                Self::Smooth { band } => plateau(xi, band / 2.0, band),
                Self::Triangle { band } => (1.0 - xi.abs() / band).max(0.0),
            };
            Complex64::new(v, 0.0)
        });
        dft_inverse(&spectrum)
    }
}

/// `(Σ_n |g(n)|^p, max(1, R) ∫ |g|^p)` over the integers of the grid.
pub fn sampling_sides(g: &SampledFunction, band: f64, p: f64) -> Result<(f64, f64)> {
    let outside = dft_forward(g).energy_fraction_outside(band);
    if outside > 1e-10 {
        return Err(Error::Accuracy { what: "spectrum mass outside [-R, R]", measured: outside, tolerance: 1e-10 });
    }
    let integers = g.grid().integers();
    let lo = *integers.first().ok_or_else(|| Error::Config("grid holds no integers".into()))?;
    let hi = *integers.last().expect("nonempty");
    let radius = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
    let samples = if lo == -(radius as i64) && hi == radius as i64 {
        sample_at_integers(g, radius)?
    } else {
        // [-L, L) holds -L but not L: sample the one-sided range directly.
        let vals: Vec<Complex64> = integers.iter().map(|&n| g.values()[g.grid().integer_index(n).expect("on grid")]).collect();
        let mut v = vals;
        v.push(Complex64::new(0.0, 0.0));
        FiniteSequence::from_values(v)
    };
    Ok((power_sum(samples.values(), p), band.max(1.0) * g.power_integral(p)?))
}

/// `lhs = Σ_n |g(n)|^p` against `rhs = max(1, R) ∫ |g|^p` with the
/// constant `ceiling` for `C^p`; the empirical `C^p` is kept as a series.
pub fn check_sampling_lemma(g: &SampledFunction, band: f64, p: f64, ceiling: f64) -> Result<CheckOutcome> {
    let (lhs, rhs) = sampling_sides(g, band, p)?;
    let mut o = CheckOutcome::new("sampling-lemma");
    o.push(InequalityReport::new("sampling-lemma", SAMPLING_REF, lhs, rhs, ceiling, 0.0).with_note(format!("R = {band}, p = {p}")));
    let cp = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    Ok(o.with_series("empirical_constant", vec![cp]))
}

/// Relative sup-gap between `C_bht(f, g)` and `(1/π)` times the paired
/// principal-value quadrature with cutoff `cutoff`.
pub fn check_bht_agreement(f: &SampledFunction, g: &SampledFunction, cutoff: f64, tolerance: f64) -> Result<CheckOutcome> {
    let freq = apply_on_line(&bht(), f, g)?;
    let time = bht_time_domain(f, g, cutoff)?.scale(Complex64::new(1.0 / PI, 0.0));
    let gap = freq.max_abs_diff(&time)?;
    let scale = freq.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut o = CheckOutcome::new("bht-agreement");
    o.push(InequalityReport::new("bht-agreement", BHT_REF, gap, scale, tolerance, 0.0).with_note(format!("N = {}", f.grid().len())));
    Ok(o)
}

/// Ratio `||C_bht(f, g)||_{p3} / (||f||_{p1} ||g||_{p2})` for fixed input
/// profiles on grids of half-width `half_width` and sizes `sizes`; the
/// record bounds the spread `max - min` by `tolerance * min`.
pub fn check_bht_stability(
    triple: ExponentTriple,
    half_width: f64,
    sizes: &[usize],
    f: impl Fn(f64) -> Complex64,
    g: impl Fn(f64) -> Complex64,
    tolerance: f64,
) -> Result<CheckOutcome> {
    let mut ratios = Vec::new();
    for &n in sizes {
        let grid = Grid1D::new(half_width, n)?;
        let fs = SampledFunction::from_fn(grid, &f)?;
        let gs = SampledFunction::from_fn(grid, &g)?;
        let out = apply_on_line(&bht(), &fs, &gs)?;
        ratios.push(out.lp_norm(triple.p3)? / (fs.lp_norm(triple.p1)? * gs.lp_norm(triple.p2)?));
    }
    let max = ratios.iter().copied().fold(f64::MIN, f64::max);
    let min = ratios.iter().copied().fold(f64::MAX, f64::min);
    let mut o = CheckOutcome::new("bht-stability");
    o.push(InequalityReport::new("bht-stability", BHT_REF, max - min, min, tolerance, 0.0).with_note(format!("triple {triple}, N in {sizes:?}")));
    Ok(o.with_series("ratios", ratios).with_series("sizes", sizes.iter().map(|&n| n as f64).collect()))
}

/// The one-variable sequence behind the failure at `p1 = 1`.
#[derive(Debug, Clone)]
pub enum RemarkSequence {
    /// `φ̃` on `|n| <= radius`, zero beyond.
    Truncated(FiniteSequence),
    /// `φ̃ ≡ c` on all of `ℤ`.
    Constant(Complex64),
}

impl RemarkSequence {
    pub fn alternating(radius: usize) -> Self {
        Self::Truncated(FiniteSequence::from_fn(radius, |n| Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0)))
    }

    /// `ψ(ξ, η) = Σ φ(n, m) χ_{J×J}(ξ - n, η - m)` with `φ(n, m) = φ̃(n)`.
    pub fn symbol(&self) -> Symbol2D {
        match self {
            Self::Truncated(seq) => {
                let r = seq.radius();
                let phi = FiniteSequence2D::from_fn(r, |n, _| seq.get(n));
                piecewise_constant_extend(&phi).symbol()
            }
            Self::Constant(c) => constant(*c),
        }
    }
}

/// `||C_ψ(f_w, 1)||_1 / (||f_w||_1 ||1||_∞)` for the `L^1`-normalized
/// Gaussians `f_w(x) = e^{-π(x/w)²} / w`, one ratio per width.
pub fn remark_ratio_curve(seq: &RemarkSequence, widths: &[f64], grid: Grid1D) -> Result<Vec<f64>> {
    let op = LineOperator::new(&seq.symbol(), grid)?;
    let one = SampledFunction::from_real_fn(grid, |_| 1.0)?;
    let triple = ExponentTriple::new(1.0, f64::INFINITY, 1.0)?;
    widths
        .iter()
        .map(|&w| {
            let f = SampledFunction::from_real_fn(grid, |x| (-PI * (x / w).powi(2)).exp() / w)?;
            let out = op.apply(&f, &one)?;
            Ok(out.lp_norm(triple.p3)? / (f.lp_norm(triple.p1)? * one.lp_norm(triple.p2)?))
        })
        .collect()
}

/// Growth of the `p1 = 1` ratio along a narrowing schedule. For a truncated
/// sequence: strict increase at every step and total growth at least
/// `growth`. For a constant sequence: spread within `flat_tolerance`.
pub fn check_remark(seq: &RemarkSequence, widths: &[f64], grid: Grid1D, growth: f64, flat_tolerance: f64) -> Result<CheckOutcome> {
    let ratios = remark_ratio_curve(seq, widths, grid)?;
    let mut o = CheckOutcome::new("remark-p1");
    match seq {
        RemarkSequence::Truncated(_) => {
            for w in ratios.windows(2) {
                // Strict increase: w[0] < w[1], encoded as w[0] <= w[1] (1 - 1e-12).
                o.push(InequalityReport::new("remark-p1-monotone", REMARK_REF, w[0], w[1], 1.0, -1e-12));
            }
            let (first, last) = (ratios[0], *ratios.last().expect("nonempty schedule"));
            o.push(
                InequalityReport::new("remark-p1-growth", REMARK_REF, growth * first, last, 1.0, 0.0)
                    .with_note(format!("growth {:.3}", last / first)),
            );
        }
        RemarkSequence::Constant(_) => {
            let max = ratios.iter().copied().fold(f64::MIN, f64::max);
            let min = ratios.iter().copied().fold(f64::MAX, f64::min);
            o.push(InequalityReport::new("remark-p1-flat", REMARK_REF, max - min, min, flat_tolerance, 0.0));
        }
    }
    Ok(o.with_series("widths", widths.to_vec()).with_series("ratios", ratios))
}

/// Wall time of the fast and direct evaluation paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Timing {
    pub n: usize,
    pub fast_seconds: f64,
    pub direct_seconds: f64,
    pub relative_gap: f64,
}

pub fn time_paths(psi: &Symbol2D, grid: Grid1D) -> Result<Timing> {
    let f = SampledFunction::from_real_fn(grid, |x| (-PI * x * x).exp())?;
    let g = SampledFunction::from_fn(grid, |x| Complex64::cis(PI * x) * (-PI * (x - 0.3).powi(2)).exp())?;
    let op = LineOperator::new(psi, grid)?;
    let start = Instant::now();
    let fast = op.apply(&f, &g)?;
    let fast_seconds = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let direct = op.apply_direct(&f, &g)?;
    let direct_seconds = start.elapsed().as_secs_f64();
    let scale = direct.values().iter().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    Ok(Timing { n: grid.len(), fast_seconds, direct_seconds, relative_gap: fast.max_abs_diff(&direct)? / scale })
}

/// At each size: agreement of the two paths to `tolerance`; at the largest
/// size, a speedup of at least `speedup`.
pub fn check_performance(psi: &Symbol2D, half_width: f64, sizes: &[usize], speedup: f64, tolerance: f64) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::new("performance");
    let mut fast = Vec::new();
    let mut direct = Vec::new();
    for &n in sizes {
        let t = time_paths(psi, Grid1D::new(half_width, n)?)?;
        o.push(
            InequalityReport::new("performance-agreement", PERFORMANCE_REF, t.relative_gap, 1.0, tolerance, 0.0)
                .with_note(format!("{} at N = {n}", psi.name())),
        );
        fast.push(t.fast_seconds);
        direct.push(t.direct_seconds);
    }
    if let (Some(&f), Some(&d)) = (fast.last(), direct.last()) {
        o.push(
            InequalityReport::new("performance-speedup", PERFORMANCE_REF, speedup * f, d, 1.0, 0.0)
                .with_note(format!("speedup {:.1} at N = {}", d / f, sizes.last().expect("nonempty"))),
        );
    }
    Ok(o.with_series("sizes", sizes.iter().map(|&n| n as f64).collect())
        .with_series("fast_seconds", fast)
        .with_series("direct_seconds", direct))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{by_id, zero};

    #[test]
    fn support_lemma_for_box() {
        let grid = Grid1D::new(8.0, 256).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| (-PI * x * x).exp()).unwrap();
        let out = check_support_lemma(&by_id("box").unwrap(), &f, &f, 1e-8).unwrap();
        assert!(out.passed());
        let zero_box = zero().with_support(SupportBox::square(-0.5, 0.5));
        let z = check_support_lemma(&zero_box, &f, &f, 1e-8).unwrap();
        assert!(z.passed());
        assert!(check_support_lemma(&by_id("tent").unwrap(), &f, &f, 1e-8).is_err());
    }

    #[test]
    fn nyquist_identity() {
        let grid = Grid1D::with_resolution(16.0, 8).unwrap();
        let g = BandLimited::Dirichlet { band: 0.5 }.build(grid);
        let (lhs, rhs) = sampling_sides(&g, 0.5, 2.0).unwrap();
        assert!((lhs / rhs - 1.0).abs() < 1e-10, "{}", lhs / rhs);
    }

    #[test]
    fn zero_function_sampling() {
        let grid = Grid1D::with_resolution(8.0, 8).unwrap();
        let out = check_sampling_lemma(&SampledFunction::zeros(grid), 1.0, 1.0, 1.0).unwrap();
        assert!(out.passed());
    }

    #[test]
    fn sampling_rejects_out_of_band() {
        let grid = Grid1D::with_resolution(8.0, 8).unwrap();
        let g = BandLimited::Triangle { band: 2.0 }.build(grid);
        assert!(matches!(sampling_sides(&g, 1.0, 1.0), Err(Error::Accuracy { .. })));
    }

    #[test]
    fn remark_constant_is_flat() {
        let grid = Grid1D::with_resolution(4.0, 32).unwrap();
        let out = check_remark(&RemarkSequence::Constant(Complex64::new(1.0, 0.0)), &[1.0, 0.5, 0.25], grid, 2.0, 1e-2).unwrap();
        assert!(out.passed());
    }

    #[test]
    fn remark_symbol_is_alternating_in_xi() {
        let s = RemarkSequence::alternating(2).symbol();
        assert_eq!(s.eval(0.1, 0.0), Complex64::new(1.0, 0.0));
        assert_eq!(s.eval(1.2, 0.3), Complex64::new(-1.0, 0.0));
        assert_eq!(s.eval(3.0, 0.0), Complex64::new(0.0, 0.0));
    }
}
