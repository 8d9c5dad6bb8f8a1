//! The linear deterministic IC-OBR: two source/destination pairs sharing a band,
//! plus a half-duplex relay on orthogonal incoming and outgoing bands.
//!
//! Gains are level counts; attenuation by `q - n` levels is a down-shift.

use serde::Serialize;

use crate::error::{check_len, Result};
use crate::gf2::LevelVector;

/// Level counts of the direct, cross and relay links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DetParams {
    pub n_d: usize,
    pub n_c: usize,
    pub n_r: usize,
}

impl DetParams {
    pub const fn new(n_d: usize, n_c: usize, n_r: usize) -> Self {
        Self { n_d, n_c, n_r }
    }

    /// Length of the interference-channel signal vectors.
    pub fn q_ic(&self) -> usize {
        self.n_d.max(self.n_c)
    }

    /// Length of the relay-band signal vectors.
    pub fn q_r(&self) -> usize {
        self.n_r
    }
}

/// Every signal of one two-stage block. Stage 1: relay listens; stage 2: relay talks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSignals {
    pub sources: [SourceSignals; 2],
    pub relay: RelaySignals,
    pub destinations: [DestinationSignals; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SourceSignals {
    pub x_ic_stage1: LevelVector,
    pub x_ic_stage2: LevelVector,
    pub x_ir: LevelVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelaySignals {
    /// What the relay hears during stage 1.
    pub y_r: LevelVector,
    /// What the relay sends during stage 2.
    pub x_r: LevelVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DestinationSignals {
    pub y_ic_stage1: LevelVector,
    pub y_ic_stage2: LevelVector,
    pub y_ir: LevelVector,
}

/// `S^k v`. Shifting by the full length or more clears the vector.
pub fn shift_down(v: &LevelVector, k: usize) -> LevelVector {
    v.shift_down(k)
}

/// Outputs of the interference channel for one channel use.
pub fn ic_outputs(
    p: &DetParams,
    x1: &LevelVector,
    x2: &LevelVector,
) -> Result<(LevelVector, LevelVector)> {
    let q = p.q_ic();
    check_len(q, x1.len())?;
    check_len(q, x2.len())?;
    let (sd, sc) = (q - p.n_d, q - p.n_c);
    let y1 = &shift_down(x1, sd) ^ &shift_down(x2, sc);
    let y2 = &shift_down(x2, sd) ^ &shift_down(x1, sc);
    Ok((y1, y2))
}

/// The relay hears the GF(2) sum of both relay-band inputs.
pub fn relay_receive(p: &DetParams, x1r: &LevelVector, x2r: &LevelVector) -> Result<LevelVector> {
    check_len(p.q_r(), x1r.len())?;
    check_len(p.q_r(), x2r.len())?;
    Ok(x1r ^ x2r)
}

/// The relay broadcast reaches both destinations unchanged.
pub fn relay_broadcast(p: &DetParams, xr: &LevelVector) -> Result<(LevelVector, LevelVector)> {
    check_len(p.q_r(), xr.len())?;
    Ok((xr.clone(), xr.clone()))
}
