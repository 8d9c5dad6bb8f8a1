use std::fmt;

use serde::Serialize;

use super::params::GaussParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GaussRegime {
    Strong,
    ExtremelyStrong,
    VeryStrong,
    Moderate,
    WeakRelayLimited,
    WeakRelayRich,
    VeryWeakRelayLimited,
    VeryWeakRelayRich,
    /// `h_d < 1` or `h_c < 1`: no closed-form rate is audited there.
    OutOfAuditDomain,
}

impl GaussRegime {
    pub const AUDITED: [GaussRegime; 8] = [
        GaussRegime::Strong,
        GaussRegime::ExtremelyStrong,
        GaussRegime::VeryStrong,
        GaussRegime::Moderate,
        GaussRegime::WeakRelayLimited,
        GaussRegime::WeakRelayRich,
        GaussRegime::VeryWeakRelayLimited,
        GaussRegime::VeryWeakRelayRich,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GaussRegime::Strong => "Strong",
            GaussRegime::ExtremelyStrong => "ExtremelyStrong",
            GaussRegime::VeryStrong => "VeryStrong",
            GaussRegime::Moderate => "Moderate",
            GaussRegime::WeakRelayLimited => "WeakRelayLimited",
            GaussRegime::WeakRelayRich => "WeakRelayRich",
            GaussRegime::VeryWeakRelayLimited => "VeryWeakRelayLimited",
            GaussRegime::VeryWeakRelayRich => "VeryWeakRelayRich",
            GaussRegime::OutOfAuditDomain => "OutOfAuditDomain",
        }
    }

    /// Largest allowed distance (bits) between the applicable outer bound and the achievable sum rate.
    pub fn gap_limit(self) -> Option<f64> {
        Some(match self {
            GaussRegime::Strong => 1e-9,
            GaussRegime::ExtremelyStrong => 1.29248,
            GaussRegime::VeryStrong => 1.25,
            GaussRegime::Moderate => 1.0,
            GaussRegime::WeakRelayLimited | GaussRegime::VeryWeakRelayLimited => 2.2925,
            GaussRegime::WeakRelayRich => 2.25,
            GaussRegime::VeryWeakRelayRich => 1.75,
            GaussRegime::OutOfAuditDomain => return None,
        })
    }
}

impl fmt::Display for GaussRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Cross-link strength above which the two-level (common plus private) split
/// of the weak regime can align the private part under the interference.
pub(crate) fn in_weak_band(hd2: f64, hc2: f64) -> bool {
    hc2 * hc2 >= hd2 + hc2
}

/// Ratios whose `(1 + x)^2` the relay-side SNR `1/2 + h_r^2` must exceed for the
/// relay band to carry fresh information in the rich sub-regimes.
pub(crate) fn very_strong_ratio(hd2: f64, hc2: f64) -> (f64, f64) {
    (hc2, hd2 * hd2 + hd2)
}

pub(crate) fn weak_ratio(hd2: f64, hc2: f64) -> (f64, f64) {
    (hd2 * hd2, hc2 * hc2 * hc2 + hc2 * hc2 + hd2 * hc2)
}

pub(crate) fn very_weak_ratio(hd2: f64, hc2: f64) -> (f64, f64) {
    (hd2 * (hc2 - 1.0), hc2 * hc2 + hc2 + hd2)
}

/// `(1/4 log(1/2 + h_r^2))^+ <= 1/2 log(1 + num/den)`, compared as products.
///
/// When `1/2 + h_r^2 <= 1` the left side is clamped to zero and the product
/// form holds automatically, so no separate branch is needed.
pub(crate) fn relay_limited(hr2: f64, (num, den): (f64, f64)) -> bool {
    (0.5 + hr2) * den * den <= (den + num) * (den + num)
}

pub fn classify_gauss(p: &GaussParams) -> GaussRegime {
    let (d, c, r) = (p.hd2, p.hc2, p.hr2);
    if !p.in_audit_domain() {
        return GaussRegime::OutOfAuditDomain;
    }
    if c >= d {
        if c <= d + d * d {
            GaussRegime::Strong
        } else if relay_limited(r, very_strong_ratio(d, c)) {
            GaussRegime::ExtremelyStrong
        } else {
            GaussRegime::VeryStrong
        }
    } else if d * (d + c) <= c * c * (c + 1.0) {
        // Checked before the weak-band tests: the two conditions can overlap.
        GaussRegime::Moderate
    } else if in_weak_band(d, c) {
        if relay_limited(r, weak_ratio(d, c)) {
            GaussRegime::WeakRelayLimited
        } else {
            GaussRegime::WeakRelayRich
        }
    } else if relay_limited(r, very_weak_ratio(d, c)) {
        GaussRegime::VeryWeakRelayLimited
    } else {
        GaussRegime::VeryWeakRelayRich
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(d: f64, c: f64, r: f64) -> GaussRegime {
        classify_gauss(&GaussParams::new(d, c, r).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(class(4.0, 100.0, 4.0), GaussRegime::ExtremelyStrong);
        assert_eq!(class(4.0, 100.0, 1000.0), GaussRegime::VeryStrong);
        assert_eq!(class(7.0, 7.0, 3.0), GaussRegime::Strong);
        assert_eq!(class(0.5, 7.0, 3.0), GaussRegime::OutOfAuditDomain);
    }

    #[test]
    fn ties_go_to_the_non_strict_side() {
        // h_c^2 = h_d^2 + h_d^4 exactly.
        assert_eq!(class(2.0, 6.0, 1e6), GaussRegime::Strong);
        // 1/2 + h_r^2 = (1 + h_c^2/(h_d^4 + h_d^2))^2 exactly: 1/2 + 8.5 = (1 + 4/2)^2.
        assert_eq!(class(1.0, 4.0, 8.5), GaussRegime::ExtremelyStrong);
        assert_eq!(class(1.0, 4.0, 8.5 + 1e-9), GaussRegime::VeryStrong);
        // h_d^2 (h_d^2 + h_c^2) = h_c^4 (h_c^2 + 1): 10 * 15 = 25 * 6.
        assert_eq!(class(10.0, 5.0, 1.0), GaussRegime::Moderate);
        assert_eq!(class(10.0 + 1e-9, 5.0, 1.0), GaussRegime::WeakRelayLimited);
    }

    #[test]
    fn moderate_wins_where_it_overlaps_very_weak() {
        // h_c^4 = 4 < h_d^2 + h_c^2 = 4.5, yet the moderate condition holds.
        assert_eq!(class(2.5, 2.0, 1.0), GaussRegime::Moderate);
    }

    #[test]
    fn weak_and_very_weak_examples() {
        assert_eq!(class(1e4, 200.0, 1.0), GaussRegime::WeakRelayLimited);
        assert_eq!(class(1e4, 200.0, 1e8), GaussRegime::WeakRelayRich);
        assert_eq!(class(1e4, 2.0, 1.0), GaussRegime::VeryWeakRelayLimited);
        assert_eq!(class(1e4, 2.0, 1e6), GaussRegime::VeryWeakRelayRich);
    }
}
