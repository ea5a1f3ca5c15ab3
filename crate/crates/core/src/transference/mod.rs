//! Maps that move symbols and functions between the line, the circle and
//! the integers.

mod extension;
mod lift;
mod periodic;
mod torus;

pub use extension::{
    chi_tilde, jodeit_extend, piecewise_constant_extend, s_kl_coefficient_table, tent_extend,
    windowed_fejer_coefficient, DecayDiagnostic, JodeitExtension, PiecewiseConstantExtension,
    SklTable, DECAY_WINDOW,
};
pub use lift::{lift_sequences, LiftedPair};
pub use periodic::{
    periodize_symbol, plateau_sample_indices, restrict_compact_to_integers,
    restrict_periodic_to_integers, wrap_to_cell, RestrictionReport,
};
pub use torus::{convolve_symbol, dilate_phi, fold_function};
