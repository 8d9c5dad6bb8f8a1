//! Sum-rate outer bounds and the cost of fixing the duplexing factor at one half.

use serde::Serialize;

use super::params::GaussParams;
use super::log2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OuterBounds {
    /// Cut-set style: each destination with its own relay link.
    pub c1: f64,
    /// Both messages decoded at one destination (meaningful for `h_c >= h_d`).
    pub c2: f64,
    /// Genie bound with cross-link side information (meaningful for `h_c < h_d`).
    pub c3: f64,
    /// Genie bound on the pair of single-user terms (meaningful for `h_c < h_d`).
    pub c4: f64,
}

/// Relay-band contribution of each bound at duplexing factor `alpha`.
///
/// `mac` is the listening arm (both sources into the relay), `bc` the
/// forwarding arm (relay to one destination).
pub fn relay_terms(alpha: f64, hr2: f64) -> [f64; 4] {
    let mac = log2(1.0 + 2.0 * hr2);
    let bc = log2(1.0 + hr2);
    let (a, b) = (alpha, 1.0 - alpha);
    [
        a.min(b) * bc,
        (a / 2.0 * mac).min(b / 2.0 * bc),
        (a * mac).min(b * bc),
        (a / 2.0 * mac).min(b / 2.0 * bc),
    ]
}

pub fn outer_bounds(p: &GaussParams) -> OuterBounds {
    let (d, c) = (p.hd2, p.hc2);
    let t = relay_terms(p.alpha, p.hr2);
    OuterBounds {
        c1: log2(1.0 + d) + t[0],
        c2: 0.5 * log2(1.0 + c + d) + t[1],
        c3: log2(1.0 + c + d / (1.0 + c)) + t[2],
        c4: 0.5 * log2(1.0 + d) + 0.5 * log2(1.0 + d / (1.0 + c)) + t[3],
    }
}

impl OuterBounds {
    /// The tightest bound valid for the channel's interference strength.
    pub fn applicable(&self, p: &GaussParams) -> f64 {
        if p.hc2 >= p.hd2 {
            self.c1.min(self.c2)
        } else {
            self.c3.min(self.c4)
        }
    }
}

/// `sup_alpha` of each relay term minus its value at `alpha = 1/2`.
///
/// The optimum equates the two arms of the min, so it is available in closed form.
pub fn duplexing_gaps(hr2: f64) -> [f64; 4] {
    let mac = log2(1.0 + 2.0 * hr2);
    let bc = log2(1.0 + hr2);
    let half = relay_terms(0.5, hr2);
    let balanced = if mac + bc > 0.0 {
        mac * bc / (mac + bc)
    } else {
        0.0
    };
    let best = [half[0], balanced / 2.0, balanced, balanced / 2.0];
    std::array::from_fn(|i| best[i] - half[i])
}

/// Worst duplexing gap of each bound over a grid of squared relay gains.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DuplexingReport {
    pub max_gap: [f64; 4],
    /// Squared relay gain at which each maximum occurs.
    pub argmax_hr2: [f64; 4],
    pub points: usize,
    pub passed: bool,
}

pub const DUPLEXING_LIMITS: [f64; 4] = [0.0, 0.125, 0.25, 0.25];
pub const DUPLEXING_TOL: f64 = 1e-6;

pub fn duplexing_gap_audit(hr2_grid: &[f64]) -> DuplexingReport {
    let mut max_gap = [f64::NEG_INFINITY; 4];
    let mut argmax_hr2 = [f64::NAN; 4];
    for &h in hr2_grid {
        for (i, g) in duplexing_gaps(h).into_iter().enumerate() {
            if g > max_gap[i] {
                max_gap[i] = g;
                argmax_hr2[i] = h;
            }
        }
    }
    let passed = !hr2_grid.is_empty()
        && max_gap
            .iter()
            .zip(DUPLEXING_LIMITS)
            .all(|(g, lim)| *g <= lim + DUPLEXING_TOL && *g >= -DUPLEXING_TOL);
    DuplexingReport {
        max_gap,
        argmax_hr2,
        points: hr2_grid.len(),
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c1_example() {
        let p = GaussParams::new(4.0, 100.0, 4.0).unwrap();
        let b = outer_bounds(&p);
        assert!((b.c1 - 3.482892142331043).abs() < 1e-12);
    }

    #[test]
    fn vanishing_relay() {
        let p = GaussParams::new(4.0, 9.0, 1e-14).unwrap();
        assert!((outer_bounds(&p).c1 - 5f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn brute_force_alpha_agrees_with_closed_form() {
        for &h in &[1e-3, 0.1, 1.0, 7.0, 300.0, 1e6] {
            let mut best = [f64::NEG_INFINITY; 4];
            for k in 1..200_000 {
                let t = relay_terms(k as f64 / 200_000.0, h);
                for i in 0..4 {
                    best[i] = best[i].max(t[i]);
                }
            }
            let half = relay_terms(0.5, h);
            let gaps = duplexing_gaps(h);
            for i in 0..4 {
                assert!((best[i] - half[i] - gaps[i]).abs() < 1e-4, "bound {i} at {h}");
            }
        }
    }
}
