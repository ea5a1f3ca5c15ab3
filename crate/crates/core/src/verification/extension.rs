//! Checks for the tent and piecewise-constant extensions and for the decay
//! of the windowed Fejér pieces.

use rand::Rng;

use crate::numerics::FiniteSequence2D;
use crate::transference::{piecewise_constant_extend, s_kl_coefficient_table, tent_extend, windowed_fejer_coefficient};

use super::estimate::trial_rng;
use super::report::{CheckOutcome, InequalityReport};

pub const TENT_REF: &str = "tent extension: psi(n,m) = phi(n,m)";
pub const ASSEMBLY_REF: &str = "piecewise extension: psi = sum of four half-scale Psi_2 terms";
pub const SKL_REF: &str = "tent extension proof: |S_kl(n,m)| (1+k^2)(1+n^2)(1+l^2)(1+m^2) <= C";

/// `max |tent_extend(φ)(n, m) - φ(n, m)|` over the integer pairs of the
/// support and one ring beyond; passes only at exactly zero.
pub fn check_tent_interpolation(phi: &FiniteSequence2D) -> CheckOutcome {
    let psi = tent_extend(phi);
    let r = phi.radius() as i64 + 1;
    let mut gap = 0.0f64;
    for n in -r..=r {
        for m in -r..=r {
            gap = gap.max((psi.eval(n as f64, m as f64) - phi.get(n, m)).norm());
        }
    }
    let mut out = CheckOutcome::new("tent-interpolation");
    out.push(InequalityReport::new("tent-interpolation", TENT_REF, gap, 0.0, 1.0, 0.0));
    out
}

/// Cell lookup against the four-term half-scale assembly at `points`
/// uniform random points of `[-R-1, R+1]²`; passes only at exactly zero.
pub fn check_piecewise_assembly(phi: &FiniteSequence2D, points: usize, seed: u64) -> CheckOutcome {
    let ext = piecewise_constant_extend(phi);
    let mut rng = trial_rng(seed, 0);
    let span = phi.radius() as f64 + 1.0;
    let mut gap = 0.0f64;
    for _ in 0..points {
        let (x, y) = (rng.random_range(-span..span), rng.random_range(-span..span));
        gap = gap.max((ext.eval(x, y) - ext.assemble(x, y)).norm());
    }
    let mut out = CheckOutcome::new("piecewise-assembly");
    out.push(
        InequalityReport::new("piecewise-assembly", ASSEMBLY_REF, gap, 0.0, 1.0, 0.0)
            .with_seed(seed)
            .with_trials(points),
    );
    out
}

/// The decay display for the windowed pieces `S_{k,l}` over
/// `k, l, n, m ∈ [-radius, radius]`:
/// every weighted coefficient is below the constant `C` of the table, the
/// constant does not grow when the range is doubled, and `|Ŝ|` drops by at
/// least a factor 4 per doubling of `n` at `n ∈ {8, 16, 32}`.
pub fn check_skl_decay(radius: usize, nodes: usize) -> CheckOutcome {
    let table = s_kl_coefficient_table(radius, nodes);
    let r = radius as i64;
    let mut worst = 0.0f64;
    for k in -r..=r {
        for l in -r..=r {
            for n in -r..=r {
                for m in -r..=r {
                    worst = worst.max(table.weighted(k, l, n, m));
                }
            }
        }
    }
    let c = table.bound_constant;
    let mut out = CheckOutcome::new("skl-decay");
    out.push(
        InequalityReport::new("skl-decay", SKL_REF, worst, c, 1.0, 1e-12)
            .with_note(format!("C = {c:.6e} over [-{radius}, {radius}]^4")),
    );
    let wide = s_kl_coefficient_table(2 * radius, nodes);
    out.push(
        InequalityReport::new("skl-decay-range", SKL_REF, wide.bound_constant, c, 1.0, 1e-9)
            .with_note(format!("C over [-{0}, {0}]^4 against C over [-{radius}, {radius}]^4", 2 * radius)),
    );
    let origin = table.coefficient(0, 0, 0, 0);
    out.push(InequalityReport::new("skl-positive", SKL_REF, -origin, 0.0, 1.0, 0.0));

    let mut ratios = Vec::new();
    for k in [0i64, 1, 3] {
        for n in [8i64, 16] {
            let a = windowed_fejer_coefficient(k, n, nodes);
            let b = windowed_fejer_coefficient(k, 2 * n, nodes);
            ratios.push(a / b);
            out.push(
                InequalityReport::new("skl-doubling", SKL_REF, 4.0 * b, a, 1.0, 0.0)
                    .with_note(format!("k = {k}, n = {n} -> {}: ratio {:.3}", 2 * n, a / b)),
            );
        }
    }
    out.with_series("doubling_ratios", ratios)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verification::estimate::complex_gaussian;

    fn random2d(seed: u64, r: usize) -> FiniteSequence2D {
        let mut rng = trial_rng(seed, 0);
        FiniteSequence2D::from_fn(r, |_, _| complex_gaussian(&mut rng))
    }

    #[test]
    fn interpolation_and_assembly_are_exact() {
        let phi = random2d(3, 3);
        assert!(check_tent_interpolation(&phi).passed());
        let out = check_piecewise_assembly(&phi, 1000, 4);
        assert!(out.passed());
        assert_eq!(out.records[0].lhs, 0.0);
    }

    #[test]
    fn zero_phi_passes() {
        let z = FiniteSequence2D::zeros(2);
        assert!(check_tent_interpolation(&z).passed());
        assert!(check_piecewise_assembly(&z, 100, 1).passed());
    }

    #[test]
    fn decay_on_a_small_range() {
        let out = check_skl_decay(4, 1024);
        assert!(out.passed(), "{:?}", out.failures().collect::<Vec<_>>());
    }
}
