//! Grids, discrete function representations, transforms and norms.

mod exponents;
mod fourier;
mod grid;
pub mod norms;
mod periodic;
mod sampled;
mod sequence;

pub use exponents::{parse_exponent, ExponentTriple};
pub use fourier::{
    dft_forward, dft_inverse, periodize, sample_at_integers, tail_fraction, transform_at,
    PERIODIZE_TAIL_TOLERANCE,
};
pub use grid::Grid1D;
pub use periodic::PeriodicFunction;
pub use sampled::{SampledFunction, Spectrum};
pub use sequence::{FiniteSequence, FiniteSequence2D};
