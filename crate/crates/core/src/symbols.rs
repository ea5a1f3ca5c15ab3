//! Bounded symbols `ψ(ξ, η)` on the plane, the named catalogue, and the
//! plateau bumps used by the lifting constructions.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::{dft_forward, dft_inverse, Grid1D, SampledFunction, Spectrum};
use crate::transference;

type EvalFn = dyn Fn(f64, f64) -> Complex64 + Send + Sync;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Closed rectangle `[xi0, xi1] x [eta0, eta1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportBox {
    pub xi: (f64, f64),
    pub eta: (f64, f64),
}

impl SupportBox {
    pub fn square(lo: f64, hi: f64) -> Self {
        Self { xi: (lo, hi), eta: (lo, hi) }
    }

    pub fn contains(&self, xi: f64, eta: f64) -> bool {
        self.xi.0 <= xi && xi <= self.xi.1 && self.eta.0 <= eta && eta <= self.eta.1
    }

    pub fn is_inside(&self, other: &SupportBox) -> bool {
        other.xi.0 <= self.xi.0
            && self.xi.1 <= other.xi.1
            && other.eta.0 <= self.eta.0
            && self.eta.1 <= other.eta.1
    }

    fn intersect(&self, other: &SupportBox) -> SupportBox {
        SupportBox {
            xi: (self.xi.0.max(other.xi.0), self.xi.1.min(other.xi.1)),
            eta: (self.eta.0.max(other.eta.0), self.eta.1.min(other.eta.1)),
        }
    }
}

/// Lines where a symbol is discontinuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SingularLine {
    /// `ξ = η`
    Diagonal,
    /// `ξ = c` for the given constant.
    Vertical(i64),
    Horizontal(i64),
}

/// A bounded symbol: an evaluation rule plus the metadata the transference
/// maps rely on. Cloning shares the rule.
#[derive(Clone)]
pub struct Symbol2D {
    name: String,
    eval: Arc<EvalFn>,
    periodic_xi: bool,
    periodic_eta: bool,
    support: Option<SupportBox>,
    singular_lines: Vec<SingularLine>,
    sup_bound: f64,
}

impl fmt::Debug for Symbol2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Symbol2D")
            .field("name", &self.name)
            .field("periodic", &(self.periodic_xi, self.periodic_eta))
            .field("support", &self.support)
            .field("singular_lines", &self.singular_lines)
            .field("sup_bound", &self.sup_bound)
            .finish()
    }
}

impl Symbol2D {
    pub fn new(
        name: impl Into<String>,
        sup_bound: f64,
        eval: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            periodic_xi: false,
            periodic_eta: false,
            support: None,
            singular_lines: Vec::new(),
            sup_bound,
        }
    }

    /// Marks the symbol 1-periodic in both variables.
    pub fn periodic(mut self) -> Self {
        self.periodic_xi = true;
        self.periodic_eta = true;
        self
    }

    pub fn with_support(mut self, support: SupportBox) -> Self {
        self.support = Some(support);
        self
    }

    pub fn with_singular_line(mut self, line: SingularLine) -> Self {
        self.singular_lines.push(line);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn eval(&self, xi: f64, eta: f64) -> Complex64 {
        (self.eval)(xi, eta)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic_xi && self.periodic_eta
    }

    pub fn periodic_flags(&self) -> (bool, bool) {
        (self.periodic_xi, self.periodic_eta)
    }

    pub fn support(&self) -> Option<SupportBox> {
        self.support
    }

    pub fn singular_lines(&self) -> &[SingularLine] {
        &self.singular_lines
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    /// `c * ψ`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let inner = self.eval.clone();
        Self {
            name: format!("{}*{}", c, self.name),
            eval: Arc::new(move |x, y| c * inner(x, y)),
            sup_bound: c.norm() * self.sup_bound,
            ..self.clone()
        }
    }

    /// Pointwise product; metadata combines conservatively.
    pub fn product(&self, other: &Symbol2D) -> Self {
        let a = self.eval.clone();
        let b = other.eval.clone();
        let support = match (self.support, other.support) {
            (Some(s), Some(t)) => Some(s.intersect(&t)),
            (s, t) => s.or(t),
        };
        let mut singular_lines = self.singular_lines.clone();
        singular_lines.extend(other.singular_lines.iter().copied());
        Self {
            name: format!("{}*{}", self.name, other.name),
            eval: Arc::new(move |x, y| a(x, y) * b(x, y)),
            periodic_xi: self.periodic_xi && other.periodic_xi,
            periodic_eta: self.periodic_eta && other.periodic_eta,
            support,
            singular_lines,
            sup_bound: self.sup_bound * other.sup_bound,
        }
    }
}

fn sgn(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else if t < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn constant(c: Complex64) -> Symbol2D {
    Symbol2D::new(format!("const({c})"), c.norm(), move |_, _| c).periodic()
}

pub fn zero() -> Symbol2D {
    constant(ZERO).renamed("zero")
}

/// `-i sgn(ξ - η)` with `sgn(0) = 0`.
pub fn bht() -> Symbol2D {
    Symbol2D::new("bht", 1.0, |xi, eta| Complex64::new(0.0, -sgn(xi - eta)))
        .with_singular_line(SingularLine::Diagonal)
}

fn tent_1d(t: f64) -> f64 {
    if (-1.0..1.0).contains(&t) {
        1.0 - t.abs()
    } else {
        0.0
    }
}

/// `Λ(ξ, η) = (1 - |ξ|)(1 - |η|)` on `[-1, 1) x [-1, 1)`, zero elsewhere.
pub fn tent() -> Symbol2D {
    Symbol2D::new("tent", 1.0, |xi, eta| Complex64::new(tent_1d(xi) * tent_1d(eta), 0.0))
        .with_support(SupportBox::square(-1.0, 1.0))
}

/// `Λ(ξ / s, η / s)`, supported in `[-s, s]^2`.
pub fn tent_scaled(s: f64) -> Symbol2D {
    Symbol2D::new(format!("tent({s})"), 1.0, move |xi, eta| {
        Complex64::new(tent_1d(xi / s) * tent_1d(eta / s), 0.0)
    })
    .with_support(SupportBox::square(-s, s))
}

/// `sin²(4πx) / (4πx)²`, equal to 1 at the origin.
pub fn fejer_factor(x: f64) -> f64 {
    let t = 4.0 * PI * x;
    if t == 0.0 {
        1.0
    } else {
        let s = t.sin() / t;
        s * s
    }
}

/// `S(x, y) = sin²(4πx)/(4πx)² · sin²(4πy)/(4πy)²`.
pub fn fejer_square() -> Symbol2D {
    Symbol2D::new("fejer2", 1.0, |x, y| Complex64::new(fejer_factor(x) * fejer_factor(y), 0.0))
}

/// `1` when `x` lies in `J = [-1/2, 1/2)`.
pub fn in_unit_cell(x: f64) -> bool {
    (-0.5..0.5).contains(&x)
}

/// Indicator of `J x J`, `J = [-1/2, 1/2)`.
pub fn indicator_box() -> Symbol2D {
    Symbol2D::new("box", 1.0, |xi, eta| {
        if in_unit_cell(xi) && in_unit_cell(eta) {
            ONE
        } else {
            ZERO
        }
    })
    .with_support(SupportBox::square(-0.5, 0.5))
}

/// C^∞ step: 0 for `t <= 0`, 1 for `t >= 1`.
pub fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / t).exp();
        let b = (-1.0 / (1.0 - t)).exp();
        a / (a + b)
    }
}

/// Even plateau: 1 on `|t| <= inner`, 0 for `|t| >= outer`, smooth between.
pub fn plateau(t: f64, inner: f64, outer: f64) -> f64 {
    smooth_step((outer - t.abs()) / (outer - inner))
}

/// Smooth product plateau: 1 on `[-1/4, 1/4]^2`, supported in `[-1/2, 1/2]^2`.
pub fn smooth_box() -> Symbol2D {
    Symbol2D::new("smooth-box", 1.0, |xi, eta| {
        Complex64::new(plateau(xi, 0.25, 0.5) * plateau(eta, 0.25, 0.5), 0.0)
    })
    .with_support(SupportBox::square(-0.5, 0.5))
}

/// `e^{2πi(aξ + bη)}`; 1-periodic when `a` and `b` are integers.
pub fn character(a: f64, b: f64) -> Symbol2D {
    let s = Symbol2D::new(format!("char({a},{b})"), 1.0, move |xi, eta| {
        Complex64::cis(2.0 * PI * (a * xi + b * eta))
    });
    if a.fract() == 0.0 && b.fract() == 0.0 {
        s.periodic()
    } else {
        s
    }
}

/// Catalogue ids accepted by [`by_id`], with a one-line description each.
pub const CATALOGUE: &[(&str, &str)] = &[
    ("bht", "-i sgn(xi - eta), the bilinear Hilbert transform"),
    ("tent", "(1-|xi|)(1-|eta|) on [-1,1)^2"),
    ("box", "indicator of [-1/2,1/2)^2"),
    ("fejer2", "sin^2(4 pi x)/(4 pi x)^2 * sin^2(4 pi y)/(4 pi y)^2"),
    ("one", "constant 1"),
    ("zero", "constant 0"),
    ("tent-half", "tent rescaled to the unit cell [-1/2,1/2]^2"),
    ("smooth-box", "smooth plateau, 1 on [-1/4,1/4]^2, supported in [-1/2,1/2]^2"),
    ("bht-box", "bht restricted to [-1/2,1/2)^2"),
    ("tent-periodized", "1-periodic extension of tent-half"),
    ("smooth-box-periodized", "1-periodic extension of smooth-box"),
    ("bht-periodized", "1-periodic extension of bht-box"),
    ("trig", "e^{2 pi i (xi + eta)}"),
];

/// Looks up a catalogue symbol by id.
pub fn by_id(id: &str) -> Option<Symbol2D> {
    let periodized = |s: Symbol2D| {
        transference::periodize_symbol(&s).expect("catalogue symbols fit the unit cell")
    };
    Some(match id {
        "bht" => bht(),
        "tent" => tent(),
        "box" => indicator_box(),
        "fejer2" => fejer_square(),
        "one" => constant(ONE).renamed("one"),
        "zero" => zero(),
        "tent-half" => tent_scaled(0.5).renamed("tent-half"),
        "smooth-box" => smooth_box(),
        "bht-box" => bht().product(&indicator_box()).renamed("bht-box"),
        "tent-periodized" => periodized(tent_scaled(0.5)).renamed("tent-periodized"),
        "smooth-box-periodized" => periodized(smooth_box()).renamed("smooth-box-periodized"),
        "bht-periodized" => {
            periodized(bht().product(&indicator_box())).renamed("bht-periodized")
        }
        "trig" => character(1.0, 1.0).renamed("trig"),
        _ => return None,
    })
}

/// Which of the two plateau bumps to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BumpFlavor {
    /// Supported in `[0, 1]`, equal to 1 on `[1/4, 3/4]`, values in `[0, 1]`.
    SupportSide,
    /// Transform equal to 1 on `[-1/2, 1/2]` and vanishing outside `[-1, 1]`.
    FrequencySide,
}

/// A bump sampled on a grid together with its grid transform.
#[derive(Debug, Clone)]
pub struct Bump {
    pub flavor: BumpFlavor,
    pub time: SampledFunction,
    pub spectrum: Spectrum,
}

/// Support-side plateau profile: smooth steps of width 1/4 at both ends.
pub fn support_bump_profile(x: f64) -> f64 {
    smooth_step(4.0 * x) * smooth_step(4.0 * (1.0 - x))
}

/// Frequency-side profile: 1 on `|ξ| <= 1/2`, 0 for `|ξ| >= 1`.
pub fn frequency_bump_profile(xi: f64) -> f64 {
    plateau(xi, 0.5, 1.0)
}

pub fn bump_phi(flavor: BumpFlavor, grid: Grid1D) -> Bump {
    match flavor {
        BumpFlavor::SupportSide => {
            let time = SampledFunction::from_real_fn(grid, support_bump_profile)
                .expect("bounded profile");
            let spectrum = dft_forward(&time);
            Bump { flavor, time, spectrum }
        }
        BumpFlavor::FrequencySide => {
            let spectrum =
                Spectrum::from_fn(grid, |xi| Complex64::new(frequency_bump_profile(xi), 0.0));
            let time = dft_inverse(&spectrum);
            Bump { flavor, time, spectrum }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn bht_values() {
        let s = bht();
        assert_eq!(s.eval(1.0, 0.0), Complex64::new(0.0, -1.0));
        assert_eq!(s.eval(0.0, 1.0), Complex64::new(0.0, 1.0));
        for t in [-3.0, 0.0, 0.7] {
            assert_eq!(s.eval(t, t), ZERO);
        }
        assert_eq!(s.singular_lines(), &[SingularLine::Diagonal]);
    }

    #[test]
    fn tent_values() {
        let s = tent();
        assert_eq!(s.eval(0.0, 0.0), ONE);
        assert_eq!(s.eval(0.5, 0.5), Complex64::new(0.25, 0.0));
        assert_eq!(s.eval(1.5, 0.0), ZERO);
        assert_eq!(s.eval(1.0, 0.0), ZERO);
    }

    #[test]
    fn fejer_values() {
        let s = fejer_square();
        assert_eq!(s.eval(0.0, 0.0), ONE);
        assert!(s.eval(0.25, 0.0).norm() < 1e-30);
        let expected = (4.0 / (PI * PI)).powi(2);
        assert!((s.eval(0.125, 0.125).re - expected).abs() < 1e-15);
        assert!((expected - 0.16425).abs() < 1e-5);
    }

    #[test]
    fn box_is_half_open() {
        let s = indicator_box();
        assert_eq!(s.eval(0.0, 0.0), ONE);
        assert_eq!(s.eval(0.5, 0.0), ZERO);
        assert_eq!(s.eval(-0.5, -0.5), ONE);
    }

    #[test]
    fn bump_constraints() {
        assert_eq!(support_bump_profile(0.5), 1.0);
        assert_eq!(support_bump_profile(-0.1), 0.0);
        assert_eq!(support_bump_profile(1.0), 0.0);
        for i in 0..=100 {
            let x = 0.25 + 0.5 * i as f64 / 100.0;
            assert_eq!(support_bump_profile(x), 1.0);
        }
        assert_eq!(frequency_bump_profile(0.4), 1.0);
        assert_eq!(frequency_bump_profile(-0.5), 1.0);
        assert_eq!(frequency_bump_profile(1.0), 0.0);

        let grid = Grid1D::with_resolution(8.0, 16).unwrap();
        let b = bump_phi(BumpFlavor::FrequencySide, grid);
        for (i, v) in b.spectrum.values().iter().enumerate() {
            let xi = grid.frequency(i);
            if xi.abs() <= 0.5 {
                assert_eq!(*v, ONE);
            }
            if xi.abs() >= 1.0 {
                assert_eq!(*v, ZERO);
            }
        }
        let back = dft_forward(&b.time);
        for (a, c) in back.values().iter().zip(b.spectrum.values()) {
            assert!((a - c).norm() < 1e-12);
        }
        let s = bump_phi(BumpFlavor::SupportSide, grid);
        let j = grid.integer_index(0).unwrap();
        assert_eq!(s.time.values()[j + 8].re, 1.0);
    }

    #[test]
    fn catalogue_metadata_holds_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for (id, _) in CATALOGUE {
            let s = by_id(id).unwrap();
            for _ in 0..10_000 {
                let xi = rng.random_range(-3.0..3.0);
                let eta = rng.random_range(-3.0..3.0);
                let v = s.eval(xi, eta);
                assert!(v.norm() <= s.sup_bound() * (1.0 + 1e-12), "{id} exceeds its bound");
                if let Some(b) = s.support() {
                    if !b.contains(xi, eta) {
                        assert_eq!(v, ZERO, "{id} nonzero outside its support");
                    }
                }
                if s.is_periodic() {
                    assert!((s.eval(xi + 1.0, eta) - v).norm() < 1e-12, "{id} not periodic in xi");
                    assert!((s.eval(xi, eta + 1.0) - v).norm() < 1e-12, "{id} not periodic in eta");
                }
            }
        }
        assert!(by_id("nope").is_none());
    }

    #[test]
    fn tent_has_unit_integral() {
        // Separable: the midpoint rule on [-1, 1] is exact up to the kinks.
        let n = 4000;
        let h = 2.0 / n as f64;
        let s = tent();
        let mut total = 0.0;
        for i in 0..n {
            let xi = -1.0 + (i as f64 + 0.5) * h;
            for j in 0..n {
                let eta = -1.0 + (j as f64 + 0.5) * h;
                total += s.eval(xi, eta).re;
            }
        }
        assert!((total * h * h - 1.0).abs() < 1e-6);
    }

    #[test]
    fn product_and_scale() {
        let s = bht().product(&indicator_box());
        assert_eq!(s.support(), Some(SupportBox::square(-0.5, 0.5)));
        assert_eq!(s.eval(0.7, 0.0), ZERO);
        assert!(close(s.eval(-0.1, 0.1), Complex64::new(0.0, 1.0)));
        let t = tent().scaled(Complex64::new(0.0, 2.0));
        assert_eq!(t.sup_bound(), 2.0);
        assert!(close(t.eval(0.0, 0.0), Complex64::new(0.0, 2.0)));
    }
}
