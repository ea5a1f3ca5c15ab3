//! Checks for dilation, folding and convolution of torus multipliers.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::norms::{power_sum, quadrature_norm, sequence_norm};
use crate::numerics::{ExponentTriple, FiniteSequence2D, PeriodicFunction};
use crate::operators::apply_on_torus;
use crate::transference::{convolve_symbol, dilate_phi, fold_function};

use super::estimate::{gaussian_vector, trial_rng};
use super::report::{digest, CheckOutcome, InequalityReport};

pub const DILATION_REF: &str = "dilation: T_k(f,g)(x) = T(F,G)(kx)";
pub const FOLD_REF: &str = "dilation: ||F||_p <= ||f||_p";
pub const CONVOLUTION_REF: &str = "convolution: ||a*phi|| <= ||a||_q ||phi||";

/// Values at `r / q`, `r = 0..q`.
fn samples_from_zero(f: &PeriodicFunction, q: usize) -> Vec<Complex64> {
    (0..q).map(|r| f.eval(r as f64 / q as f64)).collect()
}

/// Rectangle-rule `L^p` norm on the `q` nodes `r / q`.
pub fn torus_norm(f: &PeriodicFunction, p: f64, q: usize) -> Result<f64> {
    quadrature_norm(&samples_from_zero(f, q), 1.0 / q as f64, p)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest odd node count `>= min` that is coprime to `k`; on such nodes
/// `x -> kx mod 1` permutes the quadrature points.
pub fn coprime_nodes(min: usize, k: usize) -> usize {
    let mut q = min.max(1) | 1;
    while gcd(q, k) != 1 {
        q += 2;
    }
    q
}

fn random_poly(seed: u64, trial: usize, degree: usize, salt: usize) -> PeriodicFunction {
    let mut rng = trial_rng(seed, 2 * trial + salt);
    PeriodicFunction::from_coeffs(gaussian_vector(&mut rng, 2 * degree + 1)).expect("odd length")
}

fn collect<T: Send>(trials: usize, f: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    (0..trials)
        .into_par_iter()
        .map(|t| f(t).map_err(|e| Error::Trial { trial: t, source: Box::new(e) }))
        .collect()
}

/// Per trial: `||P(φ_k, f, g)||_{p3}` against `||P(φ, F, G)||_{p3}` with
/// `F = fold(f, k)`, `G = fold(g, k)`, on a node set invariant under
/// `x -> kx`; plus the exact coefficient identity `F^(n) = f^(kn)`.
pub fn check_dilation(
    phi: &FiniteSequence2D,
    k: usize,
    p3: f64,
    degree: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<CheckOutcome> {
    let phi_k = dilate_phi(phi, k)?;
    let q = coprime_nodes(8 * (4 * degree + 2) + 1, k);
    let rows = collect(trials, |t| {
        let f = random_poly(seed, t, degree, 0);
        let g = random_poly(seed, t, degree, 1);
        let (ff, gg) = (fold_function(&f, k)?, fold_function(&g, k)?);
        let dilated = torus_norm(&apply_on_torus(&phi_k, &f, &g), p3, q)?;
        let folded = torus_norm(&apply_on_torus(phi, &ff, &gg), p3, q)?;
        let d = degree as i64 / k as i64;
        let mut coeff_gap = 0.0f64;
        for n in -d..=d {
            coeff_gap = coeff_gap.max((ff.coeff(n) - f.coeff(k as i64 * n)).norm());
            coeff_gap = coeff_gap.max((gg.coeff(n) - g.coeff(k as i64 * n)).norm());
        }
        Ok((dilated, folded, coeff_gap, digest(&(f.coeffs(), g.coeffs()))))
    })?;
    let mut out = CheckOutcome::new("dilation");
    for (dilated, folded, coeff_gap, d) in rows {
        let scale = dilated.max(folded);
        out.push(
            InequalityReport::new("dilation", DILATION_REF, (dilated - folded).abs(), scale, tolerance, 0.0)
                .with_seed(seed)
                .with_digest(d.clone())
                .with_note(format!("k = {k}, nodes = {q}")),
        );
        out.push(
            InequalityReport::new("dilation-coefficients", DILATION_REF, coeff_gap, 0.0, 1.0, 0.0)
                .with_seed(seed)
                .with_digest(d),
        );
    }
    Ok(out)
}

/// `||fold(f, k)||_p <= ||f||_p` for `p` in `{1, 2, inf}`, with `F` on `q`
/// nodes and `f` on the `kq` nodes its averages are drawn from.
pub fn check_fold_contraction(k: usize, degree: usize, trials: usize, seed: u64) -> Result<CheckOutcome> {
    let q = 8 * (2 * degree + 1);
    let rows = collect(trials, |t| {
        let f = random_poly(seed, t, degree, 0);
        let folded = fold_function(&f, k)?;
        let mut r = Vec::new();
        for p in [1.0, 2.0, f64::INFINITY] {
            r.push((p, torus_norm(&folded, p, q)?, torus_norm(&f, p, k * q)?));
        }
        Ok((r, digest(&f.coeffs())))
    })?;
    let mut out = CheckOutcome::new("fold-contraction");
    for (r, d) in rows {
        for (p, lhs, rhs) in r {
            out.push(
                InequalityReport::new("fold-contraction", FOLD_REF, lhs, rhs, 1.0, 1e-12)
                    .with_seed(seed)
                    .with_digest(d.clone())
                    .with_note(format!("k = {k}, p = {p}")),
            );
        }
    }
    Ok(out)
}

/// Per trial: `||P(a*φ, F, G)||_{p3} <= ||a||_q R_φ ||F||_{p1} ||G||_{p2}`
/// with `q = min(1, p3)`.
///
/// `R_φ` is the largest ratio `φ` itself reaches over the trial inputs and
/// their modulations `F e^{-2πilx}`, `G e^{-2πikx}` for `(l, k)` in the
/// support of `a`; since `P(a*φ, F, G)` is the `a`-weighted sum of exactly
/// those outputs, the bound holds on the quadrature nodes themselves.
pub fn check_convolution(
    a: &FiniteSequence2D,
    phi: &FiniteSequence2D,
    triple: ExponentTriple,
    degree: usize,
    trials: usize,
    seed: u64,
    slack: f64,
) -> Result<CheckOutcome> {
    if triple.p3.is_infinite() {
        return Err(Error::Domain("the convolution check needs a finite p3".into()));
    }
    let conv = convolve_symbol(a, phi);
    let shifts: Vec<(i64, i64, Complex64)> = a.entries().filter(|e| e.2 != Complex64::new(0.0, 0.0)).collect();
    let q_exp = triple.p3.min(1.0);
    let a_norm = sequence_norm(a.values(), q_exp)?;
    let nodes = 8 * (4 * (degree + a.radius()) + 2) + 1;

    let rows = collect(trials, |t| {
        let f = random_poly(seed, t, degree, 0);
        let g = random_poly(seed, t, degree, 1);
        let nf = torus_norm(&f, triple.p1, nodes)?;
        let ng = torus_norm(&g, triple.p2, nodes)?;
        let lhs = torus_norm(&apply_on_torus(&conv, &f, &g), triple.p3, nodes)?;
        let mut best = 0.0f64;
        for &(l, k, _) in &shifts {
            let out = apply_on_torus(phi, &f.modulate(-l), &g.modulate(-k));
            best = best.max(torus_norm(&out, triple.p3, nodes)? / (nf * ng));
        }
        Ok((lhs, nf * ng, best, digest(&(f.coeffs(), g.coeffs()))))
    })?;
    let r_phi = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let mut out = CheckOutcome::new("convolution");
    for (lhs, inputs, _, d) in rows {
        out.push(
            InequalityReport::new("convolution", CONVOLUTION_REF, lhs, r_phi * inputs, a_norm, slack)
                .with_seed(seed)
                .with_trials(trials)
                .with_digest(d)
                .with_note(format!("q = {q_exp}, R_phi = {r_phi:.6e}")),
        );
    }
    Ok(out.with_series("a_norm_power", vec![power_sum(a.values(), q_exp)]))
}
