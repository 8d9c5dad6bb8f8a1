//! Constant-gap audit: applicable outer bound minus achievable sum rate.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::achievable::achievable_sum;
use super::bounds::outer_bounds;
use super::params::GaussParams;
use super::regime::GaussRegime;
use crate::error::Result;

/// Largest sum-rate gap across all regimes; half of it is the symmetric-rate gap.
pub const SUM_GAP_LIMIT: f64 = 2.2925;
pub const SYMMETRIC_GAP_LIMIT: f64 = 1.14625;
/// Extra symmetric-rate slack from fixing the duplexing factor at one half.
pub const DUPLEXING_SLACK: f64 = 0.125;
pub const GAP_TOL: f64 = 1e-6;
pub const NEGATIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapPoint {
    pub hd2: f64,
    pub hc2: f64,
    pub hr2: f64,
    pub regime: GaussRegime,
    pub outer_bound: f64,
    pub achievable: f64,
    pub gap: f64,
}

impl GapPoint {
    pub fn within_limit(&self) -> bool {
        let limit = self.regime.gap_limit().unwrap_or(f64::INFINITY);
        self.gap >= -NEGATIVE_TOL && self.gap <= limit + GAP_TOL
    }
}

pub fn gap_at(p: &GaussParams) -> Result<GapPoint> {
    let rep = achievable_sum(p)?;
    let outer = outer_bounds(p).applicable(p);
    Ok(GapPoint {
        hd2: p.hd2,
        hc2: p.hc2,
        hr2: p.hr2,
        regime: rep.regime,
        outer_bound: outer,
        achievable: rep.sum_rate,
        gap: outer - rep.sum_rate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeGap {
    pub points: usize,
    pub worst_gap: f64,
    pub least_gap: f64,
    /// `(h_d^2, h_c^2, h_r^2)` where the worst gap occurs.
    pub argmax: (f64, f64, f64),
    pub limit: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub points: Vec<GapPoint>,
    pub per_regime: BTreeMap<GaussRegime, RegimeGap>,
    /// Points outside `h_d, h_c >= 1`, with the reason they were skipped.
    pub skipped: Vec<(f64, f64, f64, String)>,
    pub worst_sum_gap: f64,
    pub worst_symmetric_gap: f64,
    pub passed: bool,
}

/// Evaluates every grid point in parallel; the result is independent of the thread count.
pub fn gap_audit(grid: &[GaussParams]) -> GapReport {
    let results: Vec<(GaussParams, Result<GapPoint>)> =
        grid.par_iter().map(|p| (*p, gap_at(p))).collect();
    let mut points = Vec::with_capacity(results.len());
    let mut skipped = Vec::new();
    for (p, r) in results {
        match r {
            Ok(g) => points.push(g),
            Err(e) => skipped.push((p.hd2, p.hc2, p.hr2, e.to_string())),
        }
    }
    let mut per_regime: BTreeMap<GaussRegime, RegimeGap> = BTreeMap::new();
    for g in &points {
        let e = per_regime.entry(g.regime).or_insert_with(|| RegimeGap {
            points: 0,
            worst_gap: f64::NEG_INFINITY,
            least_gap: f64::INFINITY,
            argmax: (f64::NAN, f64::NAN, f64::NAN),
            limit: g.regime.gap_limit().unwrap_or(f64::INFINITY),
            passed: true,
        });
        e.points += 1;
        if g.gap > e.worst_gap {
            e.worst_gap = g.gap;
            e.argmax = (g.hd2, g.hc2, g.hr2);
        }
        e.least_gap = e.least_gap.min(g.gap);
        e.passed &= g.within_limit();
    }
    let worst_sum_gap = points.iter().map(|g| g.gap).fold(f64::NEG_INFINITY, f64::max);
    let worst_symmetric_gap = worst_sum_gap / 2.0;
    let passed = per_regime.values().all(|r| r.passed)
        && worst_sum_gap <= SUM_GAP_LIMIT + GAP_TOL
        && worst_symmetric_gap <= SYMMETRIC_GAP_LIMIT + GAP_TOL;
    GapReport {
        points,
        per_regime,
        skipped,
        worst_sum_gap,
        worst_symmetric_gap,
        passed,
    }
}

/// `count` log-spaced values from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        hi
                    } else {
                        10f64.powf(a + (b - a) * i as f64 / (count - 1) as f64)
                    }
                })
                .collect()
        }
    }
}

/// Cartesian grid of squared gains at `alpha = 1/2`.
pub fn product_grid(hd2: &[f64], hc2: &[f64], hr2: &[f64]) -> Result<Vec<GaussParams>> {
    let mut out = Vec::with_capacity(hd2.len() * hc2.len() * hr2.len());
    for &d in hd2 {
        for &c in hc2 {
            for &r in hr2 {
                out.push(GaussParams::new(d, c, r)?);
            }
        }
    }
    Ok(out)
}

/// Squared gains log-spaced over `[1, 1e8]`, 40 per axis.
pub fn default_grid() -> Vec<GaussParams> {
    let axis = log_space(1.0, 1e8, 40);
    product_grid(&axis, &axis, &axis).expect("positive gains")
}
