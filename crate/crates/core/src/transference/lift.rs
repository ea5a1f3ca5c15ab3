use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{FiniteSequence, Grid1D, SampledFunction};
use crate::symbols::{bump_phi, BumpFlavor};

/// `f_a = Σ_k a_k Φ(· - k)` and `g_b = Σ_l b_l Φ(· - l)` on a common grid.
#[derive(Debug, Clone)]
pub struct LiftedPair {
    pub f_a: SampledFunction,
    pub g_b: SampledFunction,
    pub a: FiniteSequence,
    pub b: FiniteSequence,
    pub flavor: BumpFlavor,
    /// `sup_x Σ_l |Φ(x - l)|`; `||f_a||_p <= c ||a||_p` with this `c`.
    pub norm_constant: f64,
}

fn cyclic_shift(values: &[Complex64], steps: i64) -> Vec<Complex64> {
    let n = values.len() as i64;
    (0..n)
        .map(|j| values[(j - steps).rem_euclid(n) as usize])
        .collect()
}

fn lift_one(phi: &[Complex64], a: &FiniteSequence, spu: i64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); phi.len()];
    for k in a.indices() {
        let ak = a.get(k);
        if ak == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (o, v) in out.iter_mut().zip(cyclic_shift(phi, k * spu)) {
            *o += ak * v;
        }
    }
    out
}

/// Builds the bump lifts of `a` and `b` on `grid`.
///
/// Translates are taken cyclically on the grid; the support-side bump must
/// then fit without wrapping, i.e. `[-R, R + 1] ⊂ [-L, L]`.
pub fn lift_sequences(
    a: &FiniteSequence,
    b: &FiniteSequence,
    flavor: BumpFlavor,
    grid: Grid1D,
) -> Result<LiftedPair> {
    let spu = grid
        .samples_per_unit()
        .filter(|_| grid.contains_integers())
        .ok_or_else(|| Error::Config("lifting needs a grid containing the integers".into()))?
        as i64;
    let reach = a.support_radius().max(b.support_radius()) as f64;
    let fits = match flavor {
        BumpFlavor::SupportSide => reach + 1.0 <= grid.half_width(),
        BumpFlavor::FrequencySide => reach < grid.half_width(),
    };
    if !fits {
        return Err(Error::Config(format!(
            "grid half-width {} too narrow for sequences of radius {reach}",
            grid.half_width()
        )));
    }
    let bump = bump_phi(flavor, grid);
    let phi = bump.time.values();

    let mut periodized = vec![0.0f64; spu as usize];
    for (j, v) in phi.iter().enumerate() {
        periodized[j % spu as usize] += v.norm();
    }
    let norm_constant = periodized.into_iter().fold(0.0, f64::max);

    Ok(LiftedPair {
        f_a: SampledFunction::new(grid, lift_one(phi, a, spu))?,
        g_b: SampledFunction::new(grid, lift_one(phi, b, spu))?,
        a: a.clone(),
        b: b.clone(),
        flavor,
        norm_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid1D {
        Grid1D::with_resolution(8.0, 32).unwrap()
    }

    #[test]
    fn delta_lifts_to_the_bump() {
        let a = FiniteSequence::delta(2, 0);
        let pair = lift_sequences(&a, &a, BumpFlavor::SupportSide, grid()).unwrap();
        let bump = bump_phi(BumpFlavor::SupportSide, grid());
        assert_eq!(pair.f_a.values(), bump.time.values());
        assert_eq!(pair.norm_constant, 1.0);
    }

    #[test]
    fn disjoint_translates_add_their_norms() {
        let a = FiniteSequence::from_fn(1, |k| {
            if k == 0 || k == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let pair = lift_sequences(&a, &a, BumpFlavor::SupportSide, grid()).unwrap();
        let bump = bump_phi(BumpFlavor::SupportSide, grid());
        let single = bump.time.lp_norm(1.0).unwrap();
        assert!((pair.f_a.lp_norm(1.0).unwrap() - 2.0 * single).abs() < 1e-12);
    }

    #[test]
    fn zero_lifts_to_zero() {
        let a = FiniteSequence::zeros(3);
        let pair = lift_sequences(&a, &a, BumpFlavor::FrequencySide, grid()).unwrap();
        assert!(pair.f_a.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn lift_norm_bounded_by_sequence_norm() {
        let a = FiniteSequence::from_fn(4, |k| Complex64::new((k as f64).sin(), (k * k) as f64 / 7.0));
        let pair = lift_sequences(&a, &a, BumpFlavor::SupportSide, grid()).unwrap();
        for p in [0.5, 1.0, 2.0, 3.0, f64::INFINITY] {
            assert!(pair.f_a.lp_norm(p).unwrap() <= a.lp_norm(p).unwrap() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn narrow_grid_is_rejected() {
        let g = Grid1D::with_resolution(2.0, 16).unwrap();
        let a = FiniteSequence::delta(2, 2);
        assert!(matches!(
            lift_sequences(&a, &a, BumpFlavor::SupportSide, g),
            Err(Error::Config(_))
        ));
    }
}
