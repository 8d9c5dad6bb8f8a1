//! When strong interference beats having no interference at all.
//!
//! Without cross links each pair gets at most its direct link plus one half
//! of the relay band's share. In the extremely strong regime each user gets
//! within a fixed slack of its direct link plus a full quarter of the relay
//! band, because interference delivers the side information for free.

use serde::Serialize;

use super::log2;

/// Slack between the extremely-strong symmetric rate and its upper bound.
pub const EXTREME_SLACK: f64 = 0.65;
/// `log2(1 + h_r^2)` above which interference helps.
pub const USEFUL_THRESHOLD: f64 = 5.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Usefulness {
    pub no_interference_bound: f64,
    pub es_achievable_floor: f64,
    pub useful: bool,
    /// The same decision from the closed condition `log2(1 + h_r^2) > 5.2`.
    pub closed_form_useful: bool,
}

/// Inputs are squared gains; `hd2 >= 1`, `hr2 > 0`.
pub fn interference_useful(hd2: f64, hr2: f64) -> Usefulness {
    let direct = 0.5 * log2(1.0 + hd2);
    let relay = log2(1.0 + hr2);
    let no_interference_bound = direct + relay / 8.0;
    let es_achievable_floor = direct + relay / 4.0 - EXTREME_SLACK;
    Usefulness {
        no_interference_bound,
        es_achievable_floor,
        useful: es_achievable_floor > no_interference_bound,
        closed_form_useful: relay > USEFUL_THRESHOLD,
    }
}

/// Squared relay gain at which usefulness flips, found by bisection on the
/// sign of `floor - bound` (never from the closed condition).
pub fn usefulness_threshold(hd2: f64) -> f64 {
    let (mut lo, mut hi) = (1e-6, 1e6);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if interference_useful(hd2, mid).useful {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(interference_useful(4.0, 63.0).useful);
        assert!(!interference_useful(4.0, 1e-9).useful);
        let at = interference_useful(4.0, 5.2f64.exp2() - 1.0);
        assert!(!at.closed_form_useful);
    }

    #[test]
    fn decisions_agree_off_the_boundary() {
        for k in 0..400 {
            let hr2 = 10f64.powf(-3.0 + 11.0 * k as f64 / 399.0);
            let u = interference_useful(9.0, hr2);
            if (log2(1.0 + hr2) - USEFUL_THRESHOLD).abs() > 1e-9 {
                assert_eq!(u.useful, u.closed_form_useful, "h_r^2 = {hr2}");
            }
        }
    }
}
