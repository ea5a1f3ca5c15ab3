use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{FiniteSequence2D, PeriodicFunction};

/// `φ_k(n, m) = φ(n/k, m/k)` when `k` divides both indices, zero otherwise.
pub fn dilate_phi(phi: &FiniteSequence2D, k: usize) -> Result<FiniteSequence2D> {
    if k == 0 {
        return Err(Error::Domain("dilation factor must be a positive integer".into()));
    }
    let k = k as i64;
    Ok(FiniteSequence2D::from_fn(phi.radius() * k as usize, |n, m| {
        if n % k == 0 && m % k == 0 {
            phi.get(n / k, m / k)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `F(x) = (1/k) Σ_{j<k} f((x + j)/k)`, computed on coefficients: `F^(n) = f^(kn)`.
pub fn fold_function(f: &PeriodicFunction, k: usize) -> Result<PeriodicFunction> {
    if k == 0 {
        return Err(Error::Domain("folding factor must be a positive integer".into()));
    }
    let k = k as i64;
    Ok(PeriodicFunction::from_coeff_fn(f.degree() / k as usize, |n| f.coeff(k * n)))
}

/// `(a * φ)(n, m) = Σ_{l,k} a(l, k) φ(n - l, m - k)`.
pub fn convolve_symbol(a: &FiniteSequence2D, phi: &FiniteSequence2D) -> FiniteSequence2D {
    let mut out = FiniteSequence2D::zeros(a.radius() + phi.radius());
    for (l, k, av) in a.entries() {
        if av == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (n, m, pv) in phi.entries() {
            let (i, j) = (n + l, m + k);
            out.set(i, j, out.get(i, j) + av * pv);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random2d(rng: &mut ChaCha8Rng, r: usize) -> FiniteSequence2D {
        FiniteSequence2D::from_fn(r, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    #[test]
    fn dilation_values() {
        let phi = FiniteSequence2D::from_fn(2, |n, m| c((10 * n + m) as f64));
        assert_eq!(dilate_phi(&phi, 1).unwrap(), phi);
        let d = dilate_phi(&phi, 2).unwrap();
        assert_eq!(d.radius(), 4);
        assert_eq!(d.get(2, 4), phi.get(1, 2));
        assert_eq!(d.get(1, 2), c(0.0));
        assert_eq!(d.get(-4, 2), phi.get(-2, 1));
        assert!(dilate_phi(&phi, 0).is_err());
    }

    #[test]
    fn folding_coefficients() {
        let f = PeriodicFunction::from_coeff_fn(3, |n| c(n as f64 + 0.5));
        assert_eq!(fold_function(&f, 1).unwrap(), f);

        let d2 = PeriodicFunction::from_coeff_fn(2, |n| if n == 2 { c(1.0) } else { c(0.0) });
        let folded = fold_function(&d2, 2).unwrap();
        assert_eq!(folded.coeff(1), c(1.0));
        assert_eq!(folded.coeff(0), c(0.0));
        assert_eq!(folded.coeff(-1), c(0.0));
    }

    #[test]
    fn folding_odd_character_vanishes_by_direct_averaging() {
        let d1 = PeriodicFunction::from_coeff_fn(1, |n| if n == 1 { c(1.0) } else { c(0.0) });
        let folded = fold_function(&d1, 2).unwrap();
        for r in 0..64 {
            let x = -0.5 + r as f64 / 64.0;
            let direct: Complex64 = (0..2).map(|j| d1.eval((x + j as f64) / 2.0)).sum::<Complex64>() / 2.0;
            assert!(direct.norm() < 1e-14);
            assert!(folded.eval(x).norm() < 1e-14);
        }
    }

    #[test]
    fn folding_matches_direct_averaging() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = PeriodicFunction::from_coeff_fn(9, |_| Complex64::new(rng.random(), rng.random()));
        for k in 1..=3usize {
            let folded = fold_function(&f, k).unwrap();
            for r in 0..64 {
                let x = -0.5 + r as f64 / 64.0;
                let direct: Complex64 =
                    (0..k).map(|j| f.eval((x + j as f64) / k as f64)).sum::<Complex64>() / k as f64;
                assert!((folded.eval(x) - direct).norm() < 1e-12, "k = {k}, x = {x}");
            }
        }
    }

    #[test]
    fn folding_contracts_norms() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let f = PeriodicFunction::from_coeff_fn(8, |_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            for k in 1..=4 {
                let folded = fold_function(&f, k).unwrap();
                for p in [1.0, 2.0, f64::INFINITY] {
                    // Same node count on both sides so the folded samples are averages of the originals.
                    let q = 960;
                    let lhs = folded.lp_norm_with_nodes(p, q).unwrap();
                    let rhs = f.lp_norm_with_nodes(p, q).unwrap();
                    assert!(lhs <= rhs * (1.0 + 1e-10), "k={k} p={p}: {lhs} > {rhs}");
                }
            }
        }
    }

    #[test]
    fn convolution_against_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let a = random2d(&mut rng, 2);
        let phi = random2d(&mut rng, 2);
        let conv = convolve_symbol(&a, &phi);
        for n in -4..=4i64 {
            for m in -4..=4i64 {
                let mut acc = c(0.0);
                for l in -2..=2i64 {
                    for k in -2..=2i64 {
                        acc += a.get(l, k) * phi.get(n - l, m - k);
                    }
                }
                assert!((conv.get(n, m) - acc).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn convolution_with_deltas() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let phi = random2d(&mut rng, 2);
        let id = convolve_symbol(&FiniteSequence2D::delta(0, 0, 0), &phi);
        assert_eq!(id.max_abs_diff(&phi), 0.0);
        let shifted = convolve_symbol(&FiniteSequence2D::delta(1, 1, 0), &phi);
        for n in -3..=3i64 {
            for m in -3..=3i64 {
                assert_eq!(shifted.get(n, m), phi.get(n - 1, m));
            }
        }
    }
}
