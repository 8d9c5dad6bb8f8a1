//! Regime-specific linear coding schemes for the deterministic IC-OBR.
//!
//! A scheme covers one two-use block: in use 1 the relay listens, in use 2 it
//! forwards what it heard. Encoders place message bits on signal levels;
//! decoders are derived by Gaussian elimination on the end-to-end transfer
//! matrix, and [`verify_scheme`] certifies them by running the bit-level
//! channel on a basis of messages.

use std::fmt;

use serde::Serialize;

use crate::detbounds::{det_sum_capacity, DetRatePair, HalfBits};
use crate::detmodel::{
    ic_outputs, relay_broadcast, relay_receive, BlockSignals, DestinationSignals, DetParams,
    RelaySignals, SourceSignals,
};
use crate::error::{check_len, Result};
use crate::gf2::{BitMatrix, LevelVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DetRegime {
    ExtremelyStrong,
    VeryStrong,
    Strong,
    Moderate,
    WeakRelayRich,
    WeakRelayLimited,
    VeryWeakRelayRich,
    VeryWeakRelayLimited,
}

impl DetRegime {
    pub const ALL: [DetRegime; 8] = [
        DetRegime::ExtremelyStrong,
        DetRegime::VeryStrong,
        DetRegime::Strong,
        DetRegime::Moderate,
        DetRegime::WeakRelayRich,
        DetRegime::WeakRelayLimited,
        DetRegime::VeryWeakRelayRich,
        DetRegime::VeryWeakRelayLimited,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DetRegime::ExtremelyStrong => "ExtremelyStrong",
            DetRegime::VeryStrong => "VeryStrong",
            DetRegime::Strong => "Strong",
            DetRegime::Moderate => "Moderate",
            DetRegime::WeakRelayRich => "WeakRelayRich",
            DetRegime::WeakRelayLimited => "WeakRelayLimited",
            DetRegime::VeryWeakRelayRich => "VeryWeakRelayRich",
            DetRegime::VeryWeakRelayLimited => "VeryWeakRelayLimited",
        }
    }
}

impl fmt::Display for DetRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How relay-band levels that carry fresh (non side-information) bits are shared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ObrSplit {
    /// Source 1 gets the larger half of an odd count.
    #[default]
    Balanced,
    /// Source 1 takes every fresh relay-band level; used to reach a corner point.
    FavorFirst,
}

impl ObrSplit {
    fn split(self, b: usize) -> [usize; 2] {
        match self {
            ObrSplit::Balanced => [b.div_ceil(2), b / 2],
            ObrSplit::FavorFirst => [b, 0],
        }
    }
}

/// Splits a per-block count across the two stages, larger half first.
fn per_stage(b: usize) -> [usize; 2] {
    [b.div_ceil(2), b / 2]
}

pub fn classify_det(p: &DetParams) -> DetRegime {
    let (d, c, r) = (p.n_d, p.n_c, p.n_r);
    if 2 * c >= 4 * d + r {
        DetRegime::ExtremelyStrong
    } else if c >= 2 * d {
        DetRegime::VeryStrong
    } else if c >= d {
        DetRegime::Strong
    } else if 3 * c >= 2 * d {
        DetRegime::Moderate
    } else if 2 * c >= d {
        if 6 * c + r >= 4 * d {
            DetRegime::WeakRelayRich
        } else {
            DetRegime::WeakRelayLimited
        }
    } else if r >= 2 * c {
        DetRegime::VeryWeakRelayRich
    } else {
        DetRegime::VeryWeakRelayLimited
    }
}

/// GF(2) encoders and decoders for one two-use block.
///
/// Matrices act on column vectors; source `i`'s message has `k[i]` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearScheme {
    pub params: DetParams,
    pub regime: DetRegime,
    pub split: ObrSplit,
    pub k1: usize,
    pub k2: usize,
    /// `enc_ic[i][s]`: `q_ic x k_i`, source `i`'s interference-channel input at stage `s`.
    pub enc_ic: [[BitMatrix; 2]; 2],
    /// `enc_obr[i]`: `n_r x k_i`, source `i`'s relay-band input (sent in stage 1).
    pub enc_obr: [BitMatrix; 2],
    /// `n_r x n_r`, applied to the relay's received vector before broadcast.
    pub relay_map: BitMatrix,
    /// `dec[i]`: `k_i x (2 q_ic + n_r)`, acting on `[y_ic stage 1; y_ic stage 2; y_ir]`.
    pub dec: [BitMatrix; 2],
    /// Message bits that the decoder synthesis could not isolate, per destination.
    pub unresolved: [usize; 2],
}

impl LinearScheme {
    pub fn k(&self, i: usize) -> usize {
        [self.k1, self.k2][i]
    }

    pub fn rates(&self) -> DetRatePair {
        DetRatePair {
            r1: HalfBits::per_block(self.k1),
            r2: HalfBits::per_block(self.k2),
        }
    }

    /// Every observed signal as a matrix over the joint message `[m1; m2]`.
    pub fn transfer(&self) -> Transfer {
        let p = &self.params;
        let (q, total) = (p.q_ic(), self.k1 + self.k2);
        let off = [0, self.k1];
        let x: [[BitMatrix; 2]; 2] = std::array::from_fn(|i| {
            std::array::from_fn(|s| self.enc_ic[i][s].embed_cols(total, off[i]))
        });
        let xr: [BitMatrix; 2] = std::array::from_fn(|i| self.enc_obr[i].embed_cols(total, off[i]));
        let direct = BitMatrix::shift(q, q - p.n_d);
        let cross = BitMatrix::shift(q, q - p.n_c);
        let y: [[BitMatrix; 2]; 2] = std::array::from_fn(|i| {
            std::array::from_fn(|s| {
                let own = direct.mul(&x[i][s]).expect("shape");
                let other = cross.mul(&x[1 - i][s]).expect("shape");
                own.xor(&other).expect("shape")
            })
        });
        let y_r = xr[0].xor(&xr[1]).expect("shape");
        let x_r = self.relay_map.mul(&y_r).expect("shape");
        Transfer { x, xr, y, y_r, x_r }
    }
}

/// Linear maps from the joint message `[m1; m2]` to each signal of the block.
pub struct Transfer {
    pub x: [[BitMatrix; 2]; 2],
    pub xr: [BitMatrix; 2],
    pub y: [[BitMatrix; 2]; 2],
    pub y_r: BitMatrix,
    pub x_r: BitMatrix,
}

impl Transfer {
    /// Destination `i`'s stacked observations.
    pub fn observed(&self, i: usize) -> BitMatrix {
        self.y[i][0]
            .vstack(&self.y[i][1])
            .and_then(|m| m.vstack(&self.x_r))
            .expect("shape")
    }
}

/// Level-by-level placement of message bits, before conversion to matrices.
struct Layout {
    k: [usize; 2],
    ic: [[Vec<Option<usize>>; 2]; 2],
    obr: [Vec<Option<usize>>; 2],
}

impl Layout {
    fn new(p: &DetParams) -> Self {
        let q = p.q_ic();
        Self {
            k: [0, 0],
            ic: std::array::from_fn(|_| std::array::from_fn(|_| vec![None; q])),
            obr: std::array::from_fn(|_| vec![None; p.n_r]),
        }
    }

    fn fresh(&mut self, i: usize) -> usize {
        self.k[i] += 1;
        self.k[i] - 1
    }

    fn put_ic(&mut self, i: usize, s: usize, level: usize, bit: usize) {
        let slot = &mut self.ic[i][s][level];
        debug_assert!(slot.is_none(), "level {level} of source {i} used twice");
        *slot = Some(bit);
    }

    fn put_obr(&mut self, i: usize, level: usize, bit: usize) {
        let slot = &mut self.obr[i][level];
        debug_assert!(slot.is_none(), "relay level {level} of source {i} used twice");
        *slot = Some(bit);
    }

    /// A fresh bit placed on one IC level.
    fn send(&mut self, i: usize, s: usize, level: usize) -> usize {
        let b = self.fresh(i);
        self.put_ic(i, s, level, b);
        b
    }

    fn matrix(slots: &[Option<usize>], k: usize) -> BitMatrix {
        let rows = slots
            .iter()
            .map(|s| match s {
                Some(b) => LevelVector::unit(k, *b),
                None => LevelVector::zeros(k),
            })
            .collect();
        BitMatrix::from_rows(k, rows).expect("uniform widths")
    }

    fn encoders(&self) -> ([[BitMatrix; 2]; 2], [BitMatrix; 2]) {
        let ic = std::array::from_fn(|i| {
            std::array::from_fn(|s| Self::matrix(&self.ic[i][s], self.k[i]))
        });
        let obr = std::array::from_fn(|i| Self::matrix(&self.obr[i], self.k[i]));
        (ic, obr)
    }
}

/// Strong-side schemes: direct bits on top, side information on the levels
/// only the other destination sees, a copy of it on shared relay levels, and
/// any remaining relay levels carrying fresh bits.
fn side_information(l: &mut Layout, p: &DetParams, side: [usize; 2], split: ObrSplit) {
    let d = p.n_d;
    let mut shared = 0;
    for (s, &m) in side.iter().enumerate() {
        for i in 0..2 {
            for level in 0..d {
                l.send(i, s, level);
            }
            for j in 0..m {
                let b = l.send(i, s, d + j);
                l.put_obr(i, shared + j, b);
            }
        }
        shared += m;
    }
    own_relay_levels(l, p.n_r - shared, shared, split);
}

/// Fresh bits on relay levels `start..start + count`, each used by one source only.
fn own_relay_levels(l: &mut Layout, count: usize, start: usize, split: ObrSplit) {
    let [o1, o2] = split.split(count);
    for j in 0..o1 {
        let b = l.fresh(0);
        l.put_obr(0, start + j, b);
    }
    for j in 0..o2 {
        let b = l.fresh(1);
        l.put_obr(1, start + o1 + j, b);
    }
}

/// Source 1 fills the direct levels; source 2 sends `n_c - n_d` bits just above
/// the bottom of its direct range and repeats the ones the other destination
/// would otherwise see tangled with source 1's bits on its top levels.
fn strong(l: &mut Layout, p: &DetParams, split: ObrSplit) {
    let (d, c) = (p.n_d, p.n_c);
    let delta = c - d;
    let lo = delta.max(d - delta);
    for s in 0..2 {
        for level in 0..d {
            l.send(0, s, level);
        }
        let bits: Vec<usize> = (d - delta..d).map(|level| l.send(1, s, level)).collect();
        for j in 0..d - lo {
            let b = bits[lo + j - (d - delta)];
            l.put_ic(1, s, j, b);
        }
    }
    own_relay_levels(l, p.n_r, 0, split);
}

/// Two-stage alternating allocation. In each stage one source (the leader)
/// sends on its top `2n_c - n_d` levels and its bottom `n_d - n_c` levels;
/// the other sends `n_d - n_c` common bits on top, `n_d - n_c` private bits at
/// the bottom, and repeats some common bits where the leader leaves a gap.
fn moderate(l: &mut Layout, p: &DetParams, split: ObrSplit) {
    let (d, c) = (p.n_d, p.n_c);
    let (priv_len, lead_top) = (d - c, 2 * c - d);
    let copies = priv_len.min(lead_top - priv_len);
    let copy_at = (lead_top - priv_len).max(priv_len);
    for s in 0..2 {
        let (leader, follower) = (s, 1 - s);
        for level in (0..lead_top).chain(c..d) {
            l.send(leader, s, level);
        }
        let common: Vec<usize> = (0..priv_len).map(|level| l.send(follower, s, level)).collect();
        for level in c..d {
            l.send(follower, s, level);
        }
        for (j, &b) in common.iter().enumerate().take(copies) {
            l.put_ic(follower, s, copy_at + j, b);
        }
    }
    own_relay_levels(l, p.n_r, 0, split);
}

/// Weak-side schemes. Per stage each source sends plain common bits on
/// `plain`, relay-assisted common bits on the top `used[s]` levels of
/// `relayed` (each mirrored on a shared relay level), its fresh relay-band
/// bits, and finally private bits on `private`.
fn relay_assisted(
    l: &mut Layout,
    p: &DetParams,
    plain: std::ops::Range<usize>,
    relayed_start: usize,
    used: [usize; 2],
    private: std::ops::Range<usize>,
    split: ObrSplit,
) {
    let shared_total = used[0] + used[1];
    let own = split.split(p.n_r - shared_total);
    let own_start = [shared_total, shared_total + own[0]];
    let own_stage = [per_stage(own[0]), per_stage(own[1])];
    let mut shared = 0;
    let mut own_next = [0, 0];
    for s in 0..2 {
        for i in 0..2 {
            for level in plain.clone() {
                l.send(i, s, level);
            }
            for j in 0..used[s] {
                let b = l.send(i, s, relayed_start + j);
                l.put_obr(i, shared + j, b);
            }
            for _ in 0..own_stage[i][s] {
                let b = l.fresh(i);
                l.put_obr(i, own_start[i] + own_next[i], b);
                own_next[i] += 1;
            }
            for level in private.clone() {
                l.send(i, s, level);
            }
        }
        shared += used[s];
    }
}

/// Builds the scheme for `p` with the balanced relay-band split.
pub fn build_scheme(p: &DetParams) -> LinearScheme {
    build_scheme_with(p, ObrSplit::Balanced)
}

pub fn build_scheme_with(p: &DetParams, split: ObrSplit) -> LinearScheme {
    let (d, c, r) = (p.n_d, p.n_c, p.n_r);
    let regime = classify_det(p);
    let mut l = Layout::new(p);
    match regime {
        DetRegime::ExtremelyStrong => side_information(&mut l, p, per_stage(r), split),
        DetRegime::VeryStrong => side_information(&mut l, p, [c - 2 * d; 2], split),
        DetRegime::Strong => strong(&mut l, p, split),
        DetRegime::Moderate => moderate(&mut l, p, split),
        DetRegime::WeakRelayRich | DetRegime::WeakRelayLimited => {
            let a2 = 2 * c - d..d - c;
            let used = if regime == DetRegime::WeakRelayRich {
                [a2.len(); 2]
            } else {
                per_stage(r)
            };
            relay_assisted(&mut l, p, 0..a2.start, a2.start, used, c..d, split);
        }
        DetRegime::VeryWeakRelayRich | DetRegime::VeryWeakRelayLimited => {
            let used = if regime == DetRegime::VeryWeakRelayRich {
                [c; 2]
            } else {
                per_stage(r)
            };
            relay_assisted(&mut l, p, 0..0, 0, used, c..d, split);
        }
    }
    let (enc_ic, enc_obr) = l.encoders();
    let mut scheme = LinearScheme {
        params: *p,
        regime,
        split,
        k1: l.k[0],
        k2: l.k[1],
        enc_ic,
        enc_obr,
        relay_map: BitMatrix::identity(r),
        dec: [BitMatrix::zeros(0, 0), BitMatrix::zeros(0, 0)],
        unresolved: [0, 0],
    };
    synthesize_decoders(&mut scheme);
    scheme
}

/// Solves for decoders that map each destination's observations to its own
/// message bits with all interference cancelled. Unrecoverable bits get a
/// zero decoder row and are counted in `unresolved`.
fn synthesize_decoders(s: &mut LinearScheme) {
    let t = s.transfer();
    let total = s.k1 + s.k2;
    let off = [0, s.k1];
    #[allow(clippy::needless_range_loop)]
    for i in 0..2 {
        let g = t.observed(i);
        let targets: Vec<LevelVector> = (0..s.k(i))
            .map(|j| LevelVector::unit(total, off[i] + j))
            .collect();
        let obs = g.num_rows();
        let mut missing = 0;
        let rows = g
            .solve_left(&targets)
            .into_iter()
            .map(|d| {
                d.unwrap_or_else(|| {
                    missing += 1;
                    LevelVector::zeros(obs)
                })
            })
            .collect();
        s.dec[i] = BitMatrix::from_rows(obs, rows).expect("uniform widths");
        s.unresolved[i] = missing;
    }
}

/// Pushes one message pair through the bit-level channel and decodes it.
pub fn run_block(
    s: &LinearScheme,
    p: &DetParams,
    m1: &LevelVector,
    m2: &LevelVector,
) -> Result<(LevelVector, LevelVector, BlockSignals)> {
    check_len(s.k1, m1.len())?;
    check_len(s.k2, m2.len())?;
    if *p != s.params {
        return Err(crate::error::Error::InvalidInput(format!(
            "scheme built for {:?}, run with {:?}",
            s.params, p
        )));
    }
    let m = [m1, m2];
    let x: [[LevelVector; 2]; 2] =
        std::array::from_fn(|i| std::array::from_fn(|st| s.enc_ic[i][st].mul_vec(m[i]).expect("shape")));
    let xr: [LevelVector; 2] = std::array::from_fn(|i| s.enc_obr[i].mul_vec(m[i]).expect("shape"));

    let (y1_s1, y2_s1) = ic_outputs(p, &x[0][0], &x[1][0])?;
    let y_r = relay_receive(p, &xr[0], &xr[1])?;
    let x_r = s.relay_map.mul_vec(&y_r)?;
    let (y1_s2, y2_s2) = ic_outputs(p, &x[0][1], &x[1][1])?;
    let (y1r, y2r) = relay_broadcast(p, &x_r)?;

    let destinations = [
        DestinationSignals {
            y_ic_stage1: y1_s1,
            y_ic_stage2: y1_s2,
            y_ir: y1r,
        },
        DestinationSignals {
            y_ic_stage1: y2_s1,
            y_ic_stage2: y2_s2,
            y_ir: y2r,
        },
    ];
    let decoded: Vec<LevelVector> = destinations
        .iter()
        .zip(&s.dec)
        .map(|(d, dec)| {
            let obs = LevelVector::concat([&d.y_ic_stage1, &d.y_ic_stage2, &d.y_ir]);
            dec.mul_vec(&obs)
        })
        .collect::<Result<_>>()?;
    let [x1, x2] = x;
    let [x1r, x2r] = xr;
    let trace = BlockSignals {
        sources: [
            SourceSignals {
                x_ic_stage1: x1[0].clone(),
                x_ic_stage2: x1[1].clone(),
                x_ir: x1r,
            },
            SourceSignals {
                x_ic_stage1: x2[0].clone(),
                x_ic_stage2: x2[1].clone(),
                x_ir: x2r,
            },
        ],
        relay: RelaySignals { y_r, x_r },
        destinations,
    };
    let mut it = decoded.into_iter();
    Ok((it.next().unwrap(), it.next().unwrap(), trace))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeReport {
    pub params: DetParams,
    pub regime: DetRegime,
    pub rates: DetRatePair,
    pub sum_capacity: HalfBits,
    /// Test messages (zero plus every basis pair) decoded incorrectly.
    pub decode_errors: usize,
    pub capacity_match: bool,
}

impl SchemeReport {
    pub fn passed(&self) -> bool {
        self.decode_errors == 0 && self.capacity_match
    }
}

pub fn verify_scheme(p: &DetParams) -> SchemeReport {
    verify_built(&build_scheme(p))
}

/// Certifies a scheme by decoding the zero message and every joint basis message.
///
/// Every map in the pipeline is GF(2)-linear, so a clean basis implies a clean
/// decode for all `2^(k1 + k2)` message pairs.
pub fn verify_built(s: &LinearScheme) -> SchemeReport {
    let p = s.params;
    let mut cases = vec![(LevelVector::zeros(s.k1), LevelVector::zeros(s.k2))];
    cases.extend((0..s.k1).map(|j| (LevelVector::unit(s.k1, j), LevelVector::zeros(s.k2))));
    cases.extend((0..s.k2).map(|j| (LevelVector::zeros(s.k1), LevelVector::unit(s.k2, j))));
    let decode_errors = cases
        .iter()
        .filter(|(m1, m2)| match run_block(s, &p, m1, m2) {
            Ok((d1, d2, _)) => d1 != *m1 || d2 != *m2,
            Err(_) => true,
        })
        .count();
    let rates = s.rates();
    let sum_capacity = det_sum_capacity(&p);
    SchemeReport {
        params: p,
        regime: s.regime,
        rates,
        sum_capacity,
        decode_errors,
        capacity_match: rates.sum() == sum_capacity,
    }
}

/// One signal rendered level by level, each level the XOR of message-bit symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicSignal {
    pub name: String,
    pub levels: Vec<String>,
}

/// The whole block in symbols: source 1's bits are `a1, a2, ...`, source 2's `b1, b2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicTrace {
    pub params: DetParams,
    pub regime: DetRegime,
    pub k1: usize,
    pub k2: usize,
    pub stages: [Vec<SymbolicSignal>; 2],
    pub relay_band: Vec<SymbolicSignal>,
}

fn symbols(m: &BitMatrix, k1: usize) -> Vec<String> {
    m.rows()
        .iter()
        .map(|row| {
            let terms: Vec<String> = row
                .ones()
                .map(|j| {
                    if j < k1 {
                        format!("a{}", j + 1)
                    } else {
                        format!("b{}", j - k1 + 1)
                    }
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            }
        })
        .collect()
}

pub fn symbolic_trace(s: &LinearScheme) -> SymbolicTrace {
    let t = s.transfer();
    let sig = |name: &str, m: &BitMatrix| SymbolicSignal {
        name: name.to_string(),
        levels: symbols(m, s.k1),
    };
    let stages = std::array::from_fn(|st| {
        vec![
            sig("x1", &t.x[0][st]),
            sig("x2", &t.x[1][st]),
            sig("y1", &t.y[0][st]),
            sig("y2", &t.y[1][st]),
        ]
    });
    let relay_band = vec![
        sig("x1r", &t.xr[0]),
        sig("x2r", &t.xr[1]),
        sig("yr", &t.y_r),
        sig("xr", &t.x_r),
        sig("y1r", &t.x_r),
        sig("y2r", &t.x_r),
    ];
    SymbolicTrace {
        params: s.params,
        regime: s.regime,
        k1: s.k1,
        k2: s.k2,
        stages,
        relay_band,
    }
}

fn render_table(out: &mut String, title: &str, signals: &[SymbolicSignal]) {
    out.push_str(title);
    out.push('\n');
    let rows = signals.first().map_or(0, |s| s.levels.len());
    let widths: Vec<usize> = signals
        .iter()
        .map(|s| s.levels.iter().map(String::len).chain([s.name.len()]).max().unwrap_or(1))
        .collect();
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        format!("  {}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(signals.iter().map(|s| s.name.as_str()).collect()));
    for level in 0..rows {
        out.push_str(&line(signals.iter().map(|s| s.levels[level].as_str()).collect()));
    }
}

impl SymbolicTrace {
    /// Aligned level diagrams, most significant level on top.
    pub fn render_text(&self) -> String {
        let p = self.params;
        let mut out = format!(
            "n_d={} n_c={} n_r={} regime={} k1={} k2={}\n",
            p.n_d, p.n_c, p.n_r, self.regime, self.k1, self.k2
        );
        render_table(&mut out, "stage 1 (relay listens)", &self.stages[0]);
        render_table(&mut out, "stage 2 (relay forwards)", &self.stages[1]);
        render_table(&mut out, "relay band", &self.relay_band);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(b: &[u8]) -> LevelVector {
        LevelVector::from_bits(b).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_det(&DetParams::new(1, 4, 2)), DetRegime::ExtremelyStrong);
        assert_eq!(classify_det(&DetParams::new(5, 3, 6)), DetRegime::WeakRelayRich);
        assert_eq!(classify_det(&DetParams::new(4, 4, 0)), DetRegime::Strong);
        assert_eq!(classify_det(&DetParams::new(2, 4, 1)), DetRegime::VeryStrong);
        assert_eq!(classify_det(&DetParams::new(3, 2, 0)), DetRegime::Moderate);
        assert_eq!(classify_det(&DetParams::new(6, 3, 0)), DetRegime::WeakRelayLimited);
        assert_eq!(classify_det(&DetParams::new(5, 1, 2)), DetRegime::VeryWeakRelayRich);
        assert_eq!(classify_det(&DetParams::new(5, 2, 3)), DetRegime::VeryWeakRelayLimited);
    }

    #[test]
    fn extremely_strong_block_matches_hand_trace() {
        let p = DetParams::new(1, 4, 2);
        let s = build_scheme(&p);
        assert_eq!((s.k1, s.k2), (4, 4));
        let m1 = bits(&[1, 0, 1, 1]);
        let m2 = LevelVector::zeros(4);
        let (d1, d2, t) = run_block(&s, &p, &m1, &m2).unwrap();
        assert_eq!(d1, m1);
        assert_eq!(d2, m2);
        // x1 = [a1, a2, 0, 0] then [a3, a4, 0, 0]; relay band carries [a2, a4].
        assert_eq!(t.sources[0].x_ic_stage1, bits(&[1, 0, 0, 0]));
        assert_eq!(t.sources[0].x_ic_stage2, bits(&[1, 1, 0, 0]));
        assert_eq!(t.sources[0].x_ir, bits(&[0, 1]));
        assert_eq!(t.destinations[1].y_ic_stage1, bits(&[1, 0, 0, 0]));
        assert_eq!(t.destinations[0].y_ic_stage1, bits(&[0, 0, 0, 1]));
        assert_eq!(t.relay.y_r, bits(&[0, 1]));
    }

    #[test]
    fn zero_messages_give_zero_trace() {
        let p = DetParams::new(5, 3, 6);
        let s = build_scheme(&p);
        let (d1, d2, t) =
            run_block(&s, &p, &LevelVector::zeros(s.k1), &LevelVector::zeros(s.k2)).unwrap();
        assert!(d1.is_zero() && d2.is_zero());
        assert!(t.relay.y_r.is_zero() && t.destinations[0].y_ic_stage2.is_zero());
    }

    #[test]
    fn wrong_message_length_is_rejected() {
        let p = DetParams::new(1, 4, 2);
        let s = build_scheme(&p);
        assert!(run_block(&s, &p, &LevelVector::zeros(3), &LevelVector::zeros(4)).is_err());
        let other = DetParams::new(1, 4, 3);
        assert!(run_block(&s, &other, &LevelVector::zeros(4), &LevelVector::zeros(4)).is_err());
    }

    #[test]
    fn interference_free_scheme_is_identity() {
        let p = DetParams::new(3, 0, 0);
        let s = build_scheme(&p);
        assert_eq!((s.k1, s.k2), (6, 6));
        for i in 0..2 {
            for st in 0..2 {
                assert_eq!(s.enc_ic[i][st].rank(), 3);
            }
        }
        assert!(verify_scheme(&p).passed());
    }

    #[test]
    fn weak_relay_rich_uses_ten_bits_per_source() {
        let s = build_scheme(&DetParams::new(5, 3, 6));
        assert_eq!((s.k1, s.k2), (10, 10));
        let r = verify_built(&s);
        assert_eq!(r.decode_errors, 0);
        assert!(r.capacity_match);
    }

    #[test]
    fn symbolic_trace_of_extremely_strong_example() {
        let tr = symbolic_trace(&build_scheme(&DetParams::new(1, 4, 2)));
        assert_eq!(tr.stages[0][0].levels, ["a1", "a2", "0", "0"]);
        assert_eq!(tr.stages[0][2].levels, ["b1", "b2", "0", "a1"]);
        assert_eq!(tr.relay_band[0].levels, ["a2", "a4"]);
        assert_eq!(tr.relay_band[2].levels, ["a2+b2", "a4+b4"]);
        let text = tr.render_text();
        assert!(text.contains("regime=ExtremelyStrong"));
        assert!(text.lines().any(|l| l.trim_start().starts_with("x1")));
    }

    #[test]
    fn small_grid_is_clean() {
        for d in 0..5 {
            for c in 0..9 {
                for r in 0..5 {
                    let p = DetParams::new(d, c, r);
                    let rep = verify_scheme(&p);
                    assert!(rep.passed(), "{p:?}: {rep:?}");
                }
            }
        }
    }
}
