//! `L^p` and `l^p` functionals for every `p > 0`, including `p = inf`.
//!
//! For `p < 1` these are quasi-norms: nothing here relies on the triangle
//! inequality. Callers that compare quantities for `p < 1` should work with
//! [`power_sum`] directly.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::Domain(format!(
            "exponent must be positive or infinite, got {p}"
        )));
    }
    Ok(())
}

/// `sum |v|^p` for finite `p`, `max |v|` for `p = inf`.
pub fn power_sum(values: &[Complex64], p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    }
    if p == 2.0 {
        return values.iter().map(|v| v.norm_sqr()).sum();
    }
    values.iter().map(|v| v.norm().powf(p)).sum()
}

/// `(sum |a_k|^p)^(1/p)`, or `max |a_k|` when `p = inf`.
pub fn sequence_norm(values: &[Complex64], p: f64) -> Result<f64> {
    check_exponent(p)?;
    Ok(root(power_sum(values, p), p))
}

/// Rectangle-rule `(w * sum |f_j|^p)^(1/p)` with quadrature weight `w`.
pub fn quadrature_norm(values: &[Complex64], weight: f64, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p.is_infinite() {
        return Ok(power_sum(values, p));
    }
    Ok(root(weight * power_sum(values, p), p))
}

/// Inverse of the power scale: `s^(1/p)`, identity for `p = inf`.
pub fn root(s: f64, p: f64) -> f64 {
    if p.is_infinite() || p == 1.0 {
        s
    } else if p == 2.0 {
        s.sqrt()
    } else {
        s.powf(1.0 / p)
    }
}

/// `x^p` on the power scale, identity for `p = inf`.
pub fn power(x: f64, p: f64) -> f64 {
    if p.is_infinite() {
        x
    } else {
        x.powf(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hand_values() {
        assert_eq!(sequence_norm(&[c(0.0); 5], 2.0 / 3.0).unwrap(), 0.0);
        assert_eq!(sequence_norm(&[c(1.0)], 0.5).unwrap(), 1.0);
        assert!((sequence_norm(&[c(1.0), c(1.0)], 0.5).unwrap() - 4.0).abs() < 1e-15);
        assert_eq!(sequence_norm(&[c(-3.0), c(2.0)], f64::INFINITY).unwrap(), 3.0);
    }

    #[test]
    fn nonpositive_exponent_is_domain_error() {
        assert!(matches!(sequence_norm(&[c(1.0)], 0.0), Err(Error::Domain(_))));
        assert!(matches!(sequence_norm(&[c(1.0)], -2.0), Err(Error::Domain(_))));
        assert!(matches!(quadrature_norm(&[c(1.0)], 0.1, f64::NAN), Err(Error::Domain(_))));
    }

    fn cplx_vec() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 1..24)
            .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
    }

    proptest! {
        #[test]
        fn homogeneous(a in cplx_vec(), s in -5.0..5.0f64, p in 0.2..6.0f64) {
            let scaled: Vec<_> = a.iter().map(|v| v * s).collect();
            let lhs = sequence_norm(&scaled, p).unwrap();
            let rhs = s.abs() * sequence_norm(&a, p).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs));
        }

        #[test]
        fn pth_power_subadditive(
            pair in (1usize..20).prop_flat_map(|n| (
                prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), n),
                prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), n),
            )),
            p in 0.05..1.0f64,
        ) {
            let a: Vec<_> = pair.0.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
            let b: Vec<_> = pair.1.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
            let sum: Vec<_> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let lhs = power_sum(&sum, p);
            let rhs = power_sum(&a, p) + power_sum(&b, p);
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}
