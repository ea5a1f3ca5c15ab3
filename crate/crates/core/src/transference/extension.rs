//! Extensions of a multiplier sequence `φ(n, m)` on `ℤ²` to a symbol on the
//! plane: translate sums of a profile, the bilinear tent interpolant and the
//! piecewise-constant extension with its half-scale assembly.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::FiniteSequence2D;
use crate::symbols::{fejer_factor, SupportBox, Symbol2D};

use super::torus::dilate_phi;

/// Default truncation window for the profile summability diagnostic.
pub const DECAY_WINDOW: usize = 64;

/// Relative growth of the profile sum between the half and full windows
/// above which the partial sums are not considered settled.
const CAUCHY_TOLERANCE: f64 = 1e-3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Partial sums of `Σ |Ŝ(n, m)|^p` over `|n|, |m| <= window` and the two
/// readings of the resulting constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayDiagnostic {
    pub p: f64,
    pub window: usize,
    pub partial_sum: f64,
    pub half_window_sum: f64,
    /// `partial_sum - half_window_sum`, a crude tail estimate.
    pub tail_estimate: f64,
    pub settled: bool,
    /// `2^{1/p} Σ`
    pub constant_sum: f64,
    /// `2^{1/p} Σ^{1/p}`
    pub constant_root: f64,
    pub warning: Option<String>,
}

impl DecayDiagnostic {
    pub fn compute(profile: &Symbol2D, p: f64, window: usize) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Domain(format!("summability exponent must lie in (0, 1], got {p}")));
        }
        let half = window / 2;
        let w = window as i64;
        let mut partial_sum = 0.0;
        let mut half_window_sum = 0.0;
        for n in -w..=w {
            for m in -w..=w {
                let v = profile.eval(n as f64, m as f64);
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::NonFinite { xi: n as f64, eta: m as f64 });
                }
                let t = v.norm().powf(p);
                partial_sum += t;
                if n.unsigned_abs() as usize <= half && m.unsigned_abs() as usize <= half {
                    half_window_sum += t;
                }
            }
        }
        let tail_estimate = partial_sum - half_window_sum;
        let settled = tail_estimate <= CAUCHY_TOLERANCE * partial_sum.max(f64::MIN_POSITIVE);
        let warning = (!settled).then(|| {
            format!(
                "profile sum grew by {tail_estimate:.3e} between windows {half} and {window}; \
                 summability hypothesis not confirmed"
            )
        });
        let lead = 2f64.powf(1.0 / p);
        Ok(Self {
            p,
            window,
            partial_sum,
            half_window_sum,
            tail_estimate,
            settled,
            constant_sum: lead * partial_sum,
            constant_root: lead * partial_sum.powf(1.0 / p),
            warning,
        })
    }
}

#[derive(Debug, Clone)]
pub struct JodeitExtension {
    pub symbol: Symbol2D,
    pub diagnostic: DecayDiagnostic,
}

fn nonzero_entries(phi: &FiniteSequence2D) -> Vec<(i64, i64, Complex64)> {
    phi.entries().filter(|&(_, _, v)| v != ZERO).collect()
}

/// `ψ(ξ, η) = Σ φ(n, m) Ŝ(ξ - n, η - m)` for a frequency-side profile `Ŝ`,
/// together with the summability diagnostic at exponent `p`.
pub fn jodeit_extend(phi: &FiniteSequence2D, profile: &Symbol2D, p: f64) -> Result<JodeitExtension> {
    let diagnostic = DecayDiagnostic::compute(profile, p, DECAY_WINDOW)?;
    let entries = Arc::new(nonzero_entries(phi));
    let l1: f64 = entries.iter().map(|e| e.2.norm()).sum();
    let support = profile.support();
    let rule = profile.clone();
    let terms = Arc::clone(&entries);
    let mut symbol = Symbol2D::new(
        format!("jodeit[{}]", profile.name()),
        l1 * profile.sup_bound(),
        move |xi, eta| {
            let mut acc = ZERO;
            for &(n, m, v) in terms.iter() {
                let (a, b) = (xi - n as f64, eta - m as f64);
                if support.is_some_and(|s| !s.contains(a, b)) {
                    continue;
                }
                acc += v * rule.eval(a, b);
            }
            acc
        },
    );
    if let Some(s) = support {
        let r = phi.radius() as f64;
        symbol = symbol.with_support(SupportBox { xi: (s.xi.0 - r, s.xi.1 + r), eta: (s.eta.0 - r, s.eta.1 + r) });
    }
    Ok(JodeitExtension { symbol, diagnostic })
}

fn lerp(a: Complex64, b: Complex64, t: f64) -> Complex64 {
    a + (b - a) * t
}

/// Bilinear interpolation of `phi` at `(xi, eta)`; exact at integer pairs
/// and exact wherever the four surrounding values coincide.
fn bilinear(phi: &FiniteSequence2D, xi: f64, eta: f64) -> Complex64 {
    let (n0, m0) = (xi.floor(), eta.floor());
    let (t, s) = (xi - n0, eta - m0);
    let (n, m) = (n0 as i64, m0 as i64);
    let row0 = lerp(phi.get(n, m), phi.get(n + 1, m), t);
    let row1 = lerp(phi.get(n, m + 1), phi.get(n + 1, m + 1), t);
    lerp(row0, row1, s)
}

/// `ψ(ξ, η) = Σ φ(n, m) Λ(ξ - n, η - m)` with the tent
/// `Λ = (1 - |ξ|)(1 - |η|)` on `[-1, 1)²`.
pub fn tent_extend(phi: &FiniteSequence2D) -> Symbol2D {
    let table = Arc::new(phi.clone());
    let sup = phi.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let r = phi.radius() as f64 + 1.0;
    Symbol2D::new("tent-extension", sup, move |xi, eta| bilinear(&table, xi, eta))
        .with_support(SupportBox::square(-r, r))
}

/// 2-periodic half indicator: 1 when `x mod 2` lies in `[0, 1)`.
pub fn chi_tilde(x: f64) -> f64 {
    if x.rem_euclid(2.0) < 1.0 {
        1.0
    } else {
        0.0
    }
}

/// Index of the cell `n + J`, `J = [-1/2, 1/2)`, containing `t`.
fn cell(t: f64) -> i64 {
    (t + 0.5).floor() as i64
}

/// `ψ(ξ, η) = Σ φ(n, m) χ_{J×J}(ξ - n, η - m)` along with the half-scale
/// objects from which it can be reassembled.
#[derive(Debug, Clone)]
pub struct PiecewiseConstantExtension {
    phi: Arc<FiniteSequence2D>,
    phi2: FiniteSequence2D,
    theta2: Arc<FiniteSequence2D>,
}

pub fn piecewise_constant_extend(phi: &FiniteSequence2D) -> PiecewiseConstantExtension {
    PiecewiseConstantExtension::new(phi)
}

impl PiecewiseConstantExtension {
    pub fn new(phi: &FiniteSequence2D) -> Self {
        let phi2 = dilate_phi(phi, 2).expect("factor 2 is valid");
        let theta2 = FiniteSequence2D::from_fn(phi2.radius() + 1, |n, m| {
            phi2.get(n, m) + phi2.get(n - 1, m) + phi2.get(n, m - 1) + phi2.get(n - 1, m - 1)
        });
        Self { phi: Arc::new(phi.clone()), phi2, theta2: Arc::new(theta2) }
    }

    pub fn phi(&self) -> &FiniteSequence2D {
        &self.phi
    }

    /// `φ₂(n, m) = φ(n/2, m/2)` on even pairs, zero elsewhere.
    pub fn phi2(&self) -> &FiniteSequence2D {
        &self.phi2
    }

    /// `θ₂(n, m) = φ₂(n, m) + φ₂(n-1, m) + φ₂(n, m-1) + φ₂(n-1, m-1)`.
    pub fn theta2(&self) -> &FiniteSequence2D {
        &self.theta2
    }

    /// `Θ₂`, the tent extension of `θ₂`.
    pub fn theta2_extension(&self) -> Symbol2D {
        tent_extend(&self.theta2)
    }

    pub fn eval(&self, xi: f64, eta: f64) -> Complex64 {
        self.phi.get(cell(xi), cell(eta))
    }

    /// `Ψ₂(ξ, η) = χ̃(ξ) χ̃(η) Θ₂(ξ, η)`.
    pub fn psi2(&self, xi: f64, eta: f64) -> Complex64 {
        let mask = chi_tilde(xi) * chi_tilde(eta);
        if mask == 0.0 {
            ZERO
        } else {
            bilinear(&self.theta2, xi, eta) * mask
        }
    }

    /// `Ψ₂(2ξ, 2η) + Ψ₂(2ξ+1, 2η) + Ψ₂(2ξ, 2η+1) + Ψ₂(2ξ+1, 2η+1)`.
    pub fn assemble(&self, xi: f64, eta: f64) -> Complex64 {
        let (a, b) = (2.0 * xi, 2.0 * eta);
        self.psi2(a, b) + self.psi2(a + 1.0, b) + self.psi2(a, b + 1.0) + self.psi2(a + 1.0, b + 1.0)
    }

    fn sup(&self) -> f64 {
        self.phi.values().iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn support(&self) -> SupportBox {
        let r = self.phi.radius() as f64 + 0.5;
        SupportBox::square(-r, r)
    }

    /// The extension as a symbol, evaluated by cell lookup.
    pub fn symbol(&self) -> Symbol2D {
        let this = self.clone();
        Symbol2D::new("box-extension", self.sup(), move |xi, eta| this.eval(xi, eta))
            .with_support(self.support())
    }

    /// The extension as a symbol, evaluated through the four-term assembly.
    pub fn assembled_symbol(&self) -> Symbol2D {
        let this = self.clone();
        Symbol2D::new("box-extension-assembled", self.sup(), move |xi, eta| this.assemble(xi, eta))
            .with_support(self.support())
    }
}

/// Fourier coefficient `n` of the 1-periodic extension of
/// `χ_{k/2 + J/2}(x) sin²(4πx)/(4πx)²`, by the trapezoid rule with `nodes`
/// intervals on the window `[k/2 - 1/4, k/2 + 1/4]`.
///
/// The profile and its derivative vanish at both window ends, so the
/// periodized integrand is `C¹` and the rule converges at fourth order.
pub fn windowed_fejer_coefficient(k: i64, n: i64, nodes: usize) -> f64 {
    let nodes = nodes.max(2);
    let h = 0.5 / nodes as f64;
    let c = k as f64 / 2.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..=nodes {
        let x = c - 0.25 + r as f64 * h;
        let w = if r == 0 || r == nodes { 0.5 } else { 1.0 };
        acc += Complex64::cis(-2.0 * PI * n as f64 * x) * (w * fejer_factor(x));
    }
    (acc * h).norm()
}

/// `|Ŝ_{k,l}(n, m)| = |t_k(n)| |t_l(m)|` for `k, l, n, m` in `[-radius, radius]`,
/// where `t_k` is [`windowed_fejer_coefficient`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SklTable {
    pub radius: usize,
    pub nodes: usize,
    /// `|t_k(n)|`, row-major in `k`.
    factors: Vec<f64>,
    /// Smallest `C` with `|Ŝ_{k,l}(n,m)| (1+k²)(1+n²)(1+l²)(1+m²) <= C` on the range.
    pub bound_constant: f64,
}

fn weight(k: i64) -> f64 {
    1.0 + (k * k) as f64
}

impl SklTable {
    fn index(&self, k: i64, n: i64) -> usize {
        let r = self.radius as i64;
        assert!(k.abs() <= r && n.abs() <= r, "index outside the table");
        ((k + r) * (2 * r + 1) + (n + r)) as usize
    }

    pub fn factor(&self, k: i64, n: i64) -> f64 {
        self.factors[self.index(k, n)]
    }

    pub fn coefficient(&self, k: i64, l: i64, n: i64, m: i64) -> f64 {
        self.factor(k, n) * self.factor(l, m)
    }

    pub fn weighted(&self, k: i64, l: i64, n: i64, m: i64) -> f64 {
        self.coefficient(k, l, n, m) * weight(k) * weight(l) * weight(n) * weight(m)
    }
}

pub fn s_kl_coefficient_table(radius: usize, nodes: usize) -> SklTable {
    let r = radius as i64;
    let mut factors = Vec::with_capacity((2 * radius + 1).pow(2));
    let mut best: f64 = 0.0;
    for k in -r..=r {
        for n in -r..=r {
            let t = windowed_fejer_coefficient(k, n, nodes);
            best = best.max(t * weight(k) * weight(n));
            factors.push(t);
        }
    }
    SklTable { radius, nodes, factors, bound_constant: best * best }
}
