//! Empirical norm lower bounds and one check per identity or inequality in
//! the transference arguments. Every check returns a [`CheckOutcome`] whose
//! records say `lhs <= constant * rhs * (1 + slack)`.

mod estimate;
mod extension;
mod line;
mod report;
mod restriction;
mod torus;

pub use estimate::{
    complex_gaussian, estimate_norm, gaussian_vector, trial_rng, BilinearOperator, IntegerHandle,
    LineHandle, NormEstimate, Slot, TorusOperator, Witness, ASCENT_STEP,
};
pub use extension::{check_piecewise_assembly, check_skl_decay, check_tent_interpolation};
pub use line::{
    check_bht_agreement, check_bht_stability, check_performance, check_remark, check_sampling_lemma,
    check_support_lemma, remark_ratio_curve, sampling_sides, time_paths, BandLimited, RemarkSequence, Timing,
};
pub use report::{digest, CheckOutcome, InequalityReport};
pub use restriction::{
    check_kernel_series, check_quasi_norm_chain, check_restriction_bound, check_restriction_identity,
    compact_bump, random_pair,
};
pub use torus::{check_convolution, check_dilation, check_fold_contraction, coprime_nodes, torus_norm};
