//! Achievable sum rates at `alpha = 1/2` together with the rate constraints
//! that each regime's scheme must satisfy.

use serde::Serialize;

use super::params::GaussParams;
use super::regime::{classify_gauss, GaussRegime};
use super::solvers::{relayed_common_rate, solve_gamma, solve_theta, GammaKind};
use super::{log2, pos};
use crate::error::{Error, Result};

/// One rate constraint of a scheme, in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constraint {
    pub label: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AchievableReport {
    pub params: GaussParams,
    pub regime: GaussRegime,
    pub sum_rate: f64,
    /// Relay amplitude fraction spent on the modulo sum (rich sub-regimes).
    pub gamma: Option<f64>,
    /// Common-layer split aligning one common part with the private layer (weak band).
    pub theta: Option<f64>,
    /// Common-layer amplitude fraction in the interference channel.
    pub beta: f64,
    pub constraints: Vec<Constraint>,
}

impl AchievableReport {
    pub fn constraint(&self, label: &str) -> Option<f64> {
        self.constraints
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.value)
    }
}

fn gamma_kind(regime: GaussRegime) -> Option<GammaKind> {
    match regime {
        GaussRegime::VeryStrong => Some(GammaKind::VeryStrong),
        GaussRegime::WeakRelayRich => Some(GammaKind::WeakRich),
        GaussRegime::VeryWeakRelayRich => Some(GammaKind::VeryWeakRich),
        _ => None,
    }
}

/// Closed-form sum rate of `regime`'s scheme, evaluated without classifying `p`.
///
/// Lets the limited and rich formulas be compared across their shared seam.
pub fn closed_form_rate(regime: GaussRegime, p: &GaussParams) -> Result<f64> {
    let (d, c, r) = (p.hd2, p.hc2, p.hr2);
    let relay_fwd = |g: f64| 0.25 * log2((1.0 + r) / (1.0 + r * g * g));
    let limited_relay = pos(0.5 * log2(0.5 + r));
    Ok(match regime {
        GaussRegime::Strong => 0.5 * log2(1.0 + d + c) + 0.25 * log2(1.0 + r),
        GaussRegime::ExtremelyStrong => log2(1.0 + (d - 1.0) / 2.0) + limited_relay,
        GaussRegime::VeryStrong => {
            let g = solve_gamma(GammaKind::VeryStrong, p)?;
            log2(1.0 + (d - 1.0) / 2.0)
                + 2.0 * relayed_common_rate(GammaKind::VeryStrong, p)
                + relay_fwd(g)
        }
        GaussRegime::Moderate => {
            0.5 * log2(1.0 + d + c) + 0.5 * log2(2.0 + d / c) + 0.25 * log2(1.0 + r) - 1.0
        }
        GaussRegime::WeakRelayLimited => weak_base(d, c) + limited_relay,
        GaussRegime::WeakRelayRich => {
            let g = solve_gamma(GammaKind::WeakRich, p)?;
            weak_base(d, c) + 2.0 * relayed_common_rate(GammaKind::WeakRich, p) + relay_fwd(g)
        }
        GaussRegime::VeryWeakRelayLimited => log2(1.0 + d / (2.0 * c)) + limited_relay,
        GaussRegime::VeryWeakRelayRich => {
            let g = solve_gamma(GammaKind::VeryWeakRich, p)?;
            log2(1.0 + d / (2.0 * c))
                + 2.0 * relayed_common_rate(GammaKind::VeryWeakRich, p)
                + relay_fwd(g)
        }
        GaussRegime::OutOfAuditDomain => {
            return Err(Error::OutOfDomain {
                hd2: p.hd2,
                hc2: p.hc2,
            })
        }
    })
}

fn weak_base(d: f64, c: f64) -> f64 {
    log2(1.0 + d / (2.0 * c)) + log2(1.0 + (c * c - c - d) / (2.0 * d + 2.0 * c))
}

/// Relay-band constraints shared by the rich sub-regimes: the relay first
/// decodes the modulo sum (power `gamma^2`), then the pair of fresh messages.
fn rich_relay_constraints(out: &mut Vec<Constraint>, r: f64, g: f64, prefix: RichLabels) {
    let g2 = g * g;
    out.push(Constraint {
        label: "rr_sum_relay_mac",
        value: 0.25 * log2(1.0 + 2.0 * r * (1.0 - g2) / (1.0 + 2.0 * r * g2)),
    });
    out.push(Constraint {
        label: prefix.mod_sum,
        value: 0.25 * log2(0.5 + r * g2),
    });
    out.push(Constraint {
        label: "rr_sum_dest_mac",
        value: 0.25 * log2((1.0 + r) / (1.0 + r * g2)),
    });
    out.push(Constraint {
        label: prefix.dest,
        value: 0.25 * log2(1.0 + r * g2),
    });
}

#[derive(Clone, Copy)]
struct RichLabels {
    mod_sum: &'static str,
    dest: &'static str,
}

const COMMON: RichLabels = RichLabels {
    mod_sum: "rc_relay_mod_sum",
    dest: "rc_dest_from_relay",
};
const COMMON_B: RichLabels = RichLabels {
    mod_sum: "rcb_relay_mod_sum",
    dest: "rcb_dest_from_relay",
};

fn c(label: &'static str, value: f64) -> Constraint {
    Constraint { label, value }
}

pub fn achievable_sum(p: &GaussParams) -> Result<AchievableReport> {
    if !p.in_audit_domain() {
        return Err(Error::OutOfDomain {
            hd2: p.hd2,
            hc2: p.hc2,
        });
    }
    if (p.alpha - 0.5).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "achievable rates are evaluated at alpha = 0.5, got {}",
            p.alpha
        )));
    }
    let regime = classify_gauss(p);
    let (d, cc, r) = (p.hd2, p.hc2, p.hr2);
    let gamma = gamma_kind(regime).map(|k| solve_gamma(k, p)).transpose()?;
    let theta = match regime {
        GaussRegime::WeakRelayLimited | GaussRegime::WeakRelayRich => Some(solve_theta(p)?),
        _ => None,
    };
    let relay_mac_in = c("relay_mac_in", 0.25 * log2(1.0 + 2.0 * r));
    let relay_broadcast = c("relay_broadcast", 0.25 * log2(1.0 + r));
    let mut k = Vec::new();
    let beta2 = match regime {
        GaussRegime::Strong => {
            k.push(c("ic_single_user_pair", log2(1.0 + d)));
            k.push(c("ic_compound_mac", 0.5 * log2(1.0 + d + cc)));
            k.extend([relay_mac_in, relay_broadcast]);
            1.0
        }
        GaussRegime::ExtremelyStrong | GaussRegime::VeryStrong => {
            let dd = d * d + d;
            k.push(c("rd_at_cross_dest", 0.5 * log2(1.0 + cc * (d - 1.0) / (dd + cc))));
            k.push(c("rc_from_ic", 0.5 * log2(1.0 + cc / dd)));
            k.push(c("rd_at_own_dest", 0.5 * log2(1.0 + (d - 1.0) / 2.0)));
            match gamma {
                None => {
                    k.push(c("rc_relay_mod_sum", pos(0.25 * log2(0.5 + r))));
                    k.push(c("rc_dest_from_relay", 0.25 * log2(1.0 + r)));
                }
                Some(g) => rich_relay_constraints(&mut k, r, g, COMMON),
            }
            (d - 1.0) / d
        }
        GaussRegime::Moderate => {
            k.push(c("ic_private_pair", log2(1.0 + d / (2.0 * cc))));
            k.push(c(
                "ic_common_joint",
                0.5 * log2(1.0 + (d + cc) * (cc - 1.0) / (2.0 * cc + d)),
            ));
            k.push(c("ic_common_cross", log2(1.0 + cc * (cc - 1.0) / (2.0 * cc + d))));
            k.extend([relay_mac_in, relay_broadcast]);
            (cc - 1.0) / cc
        }
        GaussRegime::WeakRelayLimited | GaussRegime::WeakRelayRich => {
            let den = cc * cc * cc + cc * cc + d * cc;
            let excess = cc * cc - cc - d;
            k.push(c("rca_own", 0.5 * log2(1.0 + d * excess / (den + d * d))));
            k.push(c("rcb_own", 0.5 * log2(1.0 + d * d / den)));
            match gamma {
                None => k.push(c("rcb_relay_mod_sum", pos(0.25 * log2(0.5 + r)))),
                Some(g) => rich_relay_constraints(&mut k, r, g, COMMON_B),
            }
            k.push(c("rca_cross", 0.5 * log2(1.0 + excess / (2.0 * d + 2.0 * cc))));
            k.push(c("rp_own", 0.5 * log2(1.0 + d / (2.0 * cc))));
            (cc - 1.0) / cc
        }
        GaussRegime::VeryWeakRelayLimited | GaussRegime::VeryWeakRelayRich => {
            k.push(c(
                "rc_own",
                0.5 * log2(1.0 + d * (cc - 1.0) / (cc * cc + cc + d)),
            ));
            match gamma {
                None => k.push(c("rc_relay_mod_sum", pos(0.25 * log2(0.5 + r)))),
                Some(g) => rich_relay_constraints(&mut k, r, g, COMMON),
            }
            k.push(c("rp_own", 0.5 * log2(1.0 + d / (2.0 * cc))));
            (cc - 1.0) / cc
        }
        GaussRegime::OutOfAuditDomain => unreachable!("domain checked above"),
    };
    Ok(AchievableReport {
        params: *p,
        regime,
        sum_rate: closed_form_rate(regime, p)?,
        gamma,
        theta,
        beta: beta2.sqrt(),
        constraints: k,
    })
}

/// Outcome of rebuilding the sum rate from a report's constraint list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Consistency {
    pub reconstructed: f64,
    pub closed_form: f64,
    pub violations: Vec<String>,
}

impl Consistency {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const RECONCILE_TOL: f64 = 1e-9;

/// Recomputes the sum rate as the min-combination of the listed constraints
/// and checks the orderings between constraints that the closed forms assume.
// Negated comparisons are deliberate: a NaN must register as a violation.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn constraint_consistency(rep: &AchievableReport) -> Consistency {
    let mut violations = Vec::new();
    let mut get = |label: &str| -> f64 {
        rep.constraint(label).unwrap_or_else(|| {
            violations.push(format!("missing constraint {label}"));
            f64::NAN
        })
    };
    // (larger, smaller) pairs that must be ordered.
    let mut order: Vec<(&'static str, f64, &'static str, f64)> = Vec::new();
    let mut equal: Vec<(&'static str, f64, &'static str, f64)> = Vec::new();
    let reconstructed = match rep.regime {
        GaussRegime::Strong | GaussRegime::Moderate => {
            let (mac, bc) = (get("relay_mac_in"), get("relay_broadcast"));
            order.push(("relay_mac_in", mac, "relay_broadcast", bc));
            let relay = mac.min(bc);
            if rep.regime == GaussRegime::Strong {
                let (a, b) = (get("ic_single_user_pair"), get("ic_compound_mac"));
                order.push(("ic_single_user_pair", a, "ic_compound_mac", b));
                a.min(b) + relay
            } else {
                let (pp, j, x) = (
                    get("ic_private_pair"),
                    get("ic_common_joint"),
                    get("ic_common_cross"),
                );
                order.push(("ic_common_cross", x, "ic_common_joint", j));
                pp + j.min(x) + relay
            }
        }
        GaussRegime::ExtremelyStrong | GaussRegime::VeryStrong => {
            let (cross, ic, own) = (get("rd_at_cross_dest"), get("rc_from_ic"), get("rd_at_own_dest"));
            let (ms, dst) = (get("rc_relay_mod_sum"), get("rc_dest_from_relay"));
            order.push(("rd_at_cross_dest", cross, "rd_at_own_dest", own));
            let mut total = 2.0 * cross.min(own) + 2.0 * ic.min(ms).min(dst);
            if rep.regime == GaussRegime::ExtremelyStrong {
                order.push(("rc_from_ic", ic, "rc_relay_mod_sum", ms));
                order.push(("rc_dest_from_relay", dst, "rc_relay_mod_sum", ms));
            } else {
                let (a, b) = (get("rr_sum_relay_mac"), get("rr_sum_dest_mac"));
                order.push(("rr_sum_relay_mac", a, "rr_sum_dest_mac", b));
                order.push(("rc_dest_from_relay", dst, "rc_relay_mod_sum", ms));
                equal.push(("rc_relay_mod_sum", ms, "rc_from_ic", ic));
                total += a.min(b);
            }
            total
        }
        GaussRegime::WeakRelayLimited | GaussRegime::WeakRelayRich => {
            let (a_own, b_own, a_cross, p) = (
                get("rca_own"),
                get("rcb_own"),
                get("rca_cross"),
                get("rp_own"),
            );
            let ms = get("rcb_relay_mod_sum");
            order.push(("rca_own", a_own, "rca_cross", a_cross));
            let mut b = b_own.min(ms);
            let mut total = 2.0 * a_own.min(a_cross) + 2.0 * p;
            if rep.regime == GaussRegime::WeakRelayLimited {
                order.push(("rcb_own", b_own, "rcb_relay_mod_sum", ms));
            } else {
                let dst = get("rcb_dest_from_relay");
                let (x, y) = (get("rr_sum_relay_mac"), get("rr_sum_dest_mac"));
                order.push(("rcb_dest_from_relay", dst, "rcb_relay_mod_sum", ms));
                order.push(("rr_sum_relay_mac", x, "rr_sum_dest_mac", y));
                equal.push(("rcb_relay_mod_sum", ms, "rcb_own", b_own));
                b = b.min(dst);
                total += x.min(y);
            }
            total + 2.0 * b
        }
        GaussRegime::VeryWeakRelayLimited | GaussRegime::VeryWeakRelayRich => {
            let (own, ms, p) = (get("rc_own"), get("rc_relay_mod_sum"), get("rp_own"));
            let mut common = own.min(ms);
            let mut total = 2.0 * p;
            if rep.regime == GaussRegime::VeryWeakRelayLimited {
                order.push(("rc_own", own, "rc_relay_mod_sum", ms));
            } else {
                let dst = get("rc_dest_from_relay");
                let (x, y) = (get("rr_sum_relay_mac"), get("rr_sum_dest_mac"));
                order.push(("rc_dest_from_relay", dst, "rc_relay_mod_sum", ms));
                order.push(("rr_sum_relay_mac", x, "rr_sum_dest_mac", y));
                equal.push(("rc_relay_mod_sum", ms, "rc_own", own));
                common = common.min(dst);
                total += x.min(y);
            }
            total + 2.0 * common
        }
        GaussRegime::OutOfAuditDomain => f64::NAN,
    };
    for (hi_l, hi, lo_l, lo) in order {
        if !(hi >= lo - RECONCILE_TOL) {
            violations.push(format!("{hi_l} = {hi} is below {lo_l} = {lo}"));
        }
    }
    for (a_l, a, b_l, b) in equal {
        if !((a - b).abs() <= RECONCILE_TOL) {
            violations.push(format!("{a_l} = {a} differs from {b_l} = {b}"));
        }
    }
    if !((reconstructed - rep.sum_rate).abs() <= RECONCILE_TOL) {
        violations.push(format!(
            "constraints give {reconstructed}, closed form gives {}",
            rep.sum_rate
        ));
    }
    Consistency {
        reconstructed,
        closed_form: rep.sum_rate,
        violations,
    }
}
