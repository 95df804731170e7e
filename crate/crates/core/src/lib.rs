//! Expansions of analytic functions on the unit disk in finite Blaschke
//! products, computed from boundary samples.
//!
//! Functions are carried as samples on the `M`-th roots of unity together
//! with their Taylor coefficients. The Toeplitz operators
//! `T_{conj(b_lambda)}` act exactly on such samples because `|b_lambda| = 1`
//! on the circle.

pub mod blaschke;
pub mod corpus;
pub mod error;
pub mod fnspace;
pub mod norms;
pub mod parse;
pub mod report;
pub mod schauder;
pub mod spectral;
pub mod tmw;
pub mod toeplitz;

pub use blaschke::{
    blaschke_factor, cauchy_kernel, kernel_value, make_sequence, phase_bandwidth, pointwise_decay_check,
    recommended_sample_count, FiniteBlaschkeProduct, PointSequence, SequenceKind,
};
pub use error::{Error, Result};
pub use fnspace::{pairing, pointwise_combine, riesz_project, BoundaryFunction, CombineOp, DiskPoint, DEFAULT_SAMPLES};
pub use norms::{bergman_norm, embedding_check, hardy_norm, sup_norm, EmbeddingCheck, NormSpec};
pub use num_complex::Complex64;
pub use parse::parse_complex;
pub use schauder::{
    convergence_study, expansion_coefficients, kernel_remainder_bound, partial_sum, remainder_closed_form,
    triangular_reconstruct, ConvergenceTable, ExpansionResult,
};
pub use tmw::{
    functional_norm, gram_matrix, lacunary_witness, tmw_element, tmw_span, FunctionalNorm, GramMatrix, TMWElement,
    WitnessReport, WitnessSupport,
};
pub use toeplitz::{
    dilation_bound_check, hinf_remark_bound_check, reconstruction_residual, toeplitz_factor_apply,
    toeplitz_general_apply, toeplitz_product_apply,
};
