//! Capacity analysis for the symmetric two-user interference channel with an
//! out-of-band half-duplex relay.
//!
//! * [`detmodel`], [`detbounds`], [`detschemes`]: the linear deterministic
//!   model, its closed-form sum capacity, and bit-exact coding schemes that
//!   reach it.
//! * [`gausscap`]: outer bounds, achievable rates and constant-gap audits for
//!   the Gaussian model.

pub mod detbounds;
pub mod detmodel;
pub mod detschemes;
pub mod error;
pub mod gausscap;
pub mod gf2;

pub use detbounds::{det_outer_region, det_sum_capacity, DetOuterRegion, DetRatePair, HalfBits};
pub use detmodel::{ic_outputs, relay_broadcast, relay_receive, shift_down, BlockSignals, DetParams};
pub use detschemes::{
    build_scheme, classify_det, run_block, verify_scheme, DetRegime, LinearScheme, ObrSplit,
    SchemeReport,
};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, LevelVector};
