//! Exact combinatorics of squarefree run ideals on paths and cycles.
//!
//! The crate computes extended binomial coefficients, count vectors of
//! squarefree monomials relative to run ideals, alternating-transform depth
//! certificates, and runs a verification harness that checks a catalogue of
//! identities and inequalities against closed forms and a subset-enumeration
//! oracle. All arithmetic is exact over arbitrary-precision integers.

pub mod error;
pub mod extbinom;
pub mod hilbert;
pub mod ideals;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use extbinom::{binom, coeff_row, ext_binom, ext_binom_ie, CoeffRow};
pub use hilbert::{
    alpha_from_beta, beta_from_alpha, beta_incremental, chu_vandermonde, depth_bounds_cycle,
    depth_bounds_path, phi, qdepth, BetaVector, DepthBounds, DepthValue,
};
pub use ideals::{
    alpha_cycle_ideal, alpha_cycle_quotient, alpha_cycle_rel, alpha_path_ideal,
    alpha_path_quotient, alpha_vector, cycle_generators, enumerate_alpha, in_cycle_ideal,
    in_path_ideal, monomial_to_seq, path_generators, quotient_spec, seq_to_monomial, AlphaVector,
    CycleFamily, GeneralIdealSpec, MonomialSet, PathFamily, QuotientId, RunSequence, Variant,
    DEFAULT_ORACLE_CAP, ORACLE_HARD_CAP,
};
pub use report::{CheckCounts, CheckParams, CheckResult, Relation, Summary, SweepReport};
pub use verify::{
    check_cor21, check_cor22, check_identities, check_oracle, check_qdepth_bounds, check_t31,
    check_t33, sweep, SweepOptions,
};
