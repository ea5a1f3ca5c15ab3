//! Numerical laboratory for bilinear Fourier multipliers on the real line,
//! the circle and the integers.
//!
//! The crate evaluates the three multiplier operators
//!
//! * on the line: `(f, g) -> ∫∫ f^(ξ) g^(η) ψ(ξ, η) e^{2πix(ξ+η)} dξ dη`,
//! * on the circle: `(F, G) -> Σ F^(n) G^(m) φ(n, m) e^{2πix(n+m)}`,
//! * on the integers: `(a, b) -> ∫∫_{T²} a^(θ) b^(ρ) ψ(θ, ρ) e^{2πil(θ+ρ)} dθ dρ`,
//!
//! implements the maps that transport symbols between these settings
//! (bump lifts, periodization, kernel restriction, dilation, folding,
//! convolution, translate-sum extensions), and checks the identities and
//! inequalities relating them on finite grids.

pub mod config;
pub mod error;
pub mod numerics;
pub mod operators;
pub mod symbols;
pub mod transference;
pub mod verification;

pub use error::{Error, Result};
