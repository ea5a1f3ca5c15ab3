use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const HOLDER_RTOL: f64 = 1e-12;

/// Hölder-related exponents: `1/p1 + 1/p2 = 1/p3` with `p1, p2 >= 1` and
/// `p3 >= 1/2`. Infinite exponents are stored as `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTriple {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl ExponentTriple {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        if p1.is_nan() || p2.is_nan() || p3.is_nan() {
            return Err(Error::Domain("exponents must not be NaN".into()));
        }
        if p1 < 1.0 || p2 < 1.0 {
            return Err(Error::Domain(format!(
                "p1 and p2 must be >= 1, got ({p1}, {p2})"
            )));
        }
        if p3 < 0.5 {
            return Err(Error::Domain(format!("p3 must be >= 1/2, got {p3}")));
        }
        let lhs = p1.recip() + p2.recip();
        let rhs = p3.recip();
        if (lhs - rhs).abs() > HOLDER_RTOL * lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE) {
            return Err(Error::Domain(format!(
                "Hölder relation 1/p1 + 1/p2 = 1/p3 violated: 1/{p1} + 1/{p2} = {lhs} but 1/{p3} = {rhs}"
            )));
        }
        Ok(Self { p1, p2, p3 })
    }

    /// Parses `"p1, p2, p3"`; each entry accepts decimals, fractions `a/b`, or `inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!(
                "exponent triple needs three comma-separated entries, got {s:?}"
            )));
        }
        Self::new(
            parse_exponent(parts[0])?,
            parse_exponent(parts[1])?,
            parse_exponent(parts[2])?,
        )
    }
}

impl fmt::Display for ExponentTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p1, self.p2, self.p3)
    }
}

/// Parses a single exponent: `2`, `1.5`, `2/3`, `inf`/`infinity`/`∞`.
pub fn parse_exponent(s: &str) -> Result<f64> {
    let s = s.trim();
    let lower = s.to_ascii_lowercase();
    if lower == "inf" || lower == "infinity" || s == "∞" {
        return Ok(f64::INFINITY);
    }
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad(s))?;
            let den: f64 = den.trim().parse().map_err(|_| bad(s))?;
            if den == 0.0 {
                return Err(bad(s));
            }
            num / den
        }
        None => s.parse().map_err(|_| bad(s))?,
    };
    if !value.is_finite() || value <= 0.0 {
        return Err(bad(s));
    }
    Ok(value)
}

fn bad(s: &str) -> Error {
    Error::Config(format!("cannot parse exponent {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_holder_triples() {
        ExponentTriple::new(2.0, 2.0, 1.0).unwrap();
        ExponentTriple::new(4.0, 4.0, 2.0).unwrap();
        ExponentTriple::new(3.0, 3.0, 1.5).unwrap();
        ExponentTriple::new(1.0, 1.0, 0.5).unwrap();
        ExponentTriple::new(1.0, f64::INFINITY, 1.0).unwrap();
        ExponentTriple::new(f64::INFINITY, f64::INFINITY, f64::INFINITY).unwrap();
    }

    #[test]
    fn rejects_broken_relation() {
        let err = ExponentTriple::new(2.0, 2.0, 2.0).unwrap_err();
        assert!(err.to_string().contains("Hölder"));
        assert!(ExponentTriple::new(0.5, 2.0, 0.4).is_err());
    }

    #[test]
    fn parses_fractions_and_infinity() {
        let t = ExponentTriple::parse("4/3, 4/3, 2/3").unwrap();
        assert!((t.p3 - 2.0 / 3.0).abs() < 1e-15);
        let t = ExponentTriple::parse("1, inf, 1").unwrap();
        assert!(t.p2.is_infinite());
        assert!(ExponentTriple::parse("1,2").is_err());
        assert!(parse_exponent("1/0").is_err());
        assert!(parse_exponent("-2").is_err());
        assert!(parse_exponent("nan").is_err());
    }
}
