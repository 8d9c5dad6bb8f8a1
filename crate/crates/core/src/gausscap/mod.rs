//! Gaussian IC-OBR: outer bounds, regime classification, achievable sum rates
//! with their constraint sets, and constant-gap audits. All logs are base 2.

pub mod achievable;
pub mod bounds;
pub mod chains;
pub mod gap;
pub mod params;
pub mod regime;
pub mod solvers;
pub mod useful;

pub use achievable::{
    achievable_sum, closed_form_rate, constraint_consistency, AchievableReport, Consistency,
    Constraint,
};
pub use bounds::{duplexing_gap_audit, duplexing_gaps, outer_bounds, DuplexingReport, OuterBounds};
pub use chains::{chain_audit, ChainStep, Relation};
pub use gap::{default_grid, gap_at, gap_audit, log_space, product_grid, GapPoint, GapReport};
pub use params::GaussParams;
pub use regime::{classify_gauss, GaussRegime};
pub use solvers::{solve_gamma, solve_theta, GammaKind};
pub use useful::{interference_useful, usefulness_threshold, Usefulness};

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    x.log2()
}

#[inline]
pub(crate) fn pos(x: f64) -> f64 {
    x.max(0.0)
}
