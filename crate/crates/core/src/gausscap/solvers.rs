//! Power-split parameters of the lattice and superposition schemes.

use serde::Serialize;

use super::log2;
use super::params::GaussParams;
use super::regime::{in_weak_band, very_strong_ratio, very_weak_ratio, weak_ratio};
use crate::error::{Error, Result};

/// Which rich-relay sub-regime a relay power split is solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaKind {
    VeryStrong,
    WeakRich,
    VeryWeakRich,
}

pub const GAMMA_RESIDUAL: f64 = 1e-9;
pub const THETA_RESIDUAL: f64 = 1e-12;

/// Rate (bits) of the common message that also travels through the relay.
pub(crate) fn relayed_common_rate(kind: GammaKind, p: &GaussParams) -> f64 {
    let (num, den) = match kind {
        GammaKind::VeryStrong => very_strong_ratio(p.hd2, p.hc2),
        GammaKind::WeakRich => weak_ratio(p.hd2, p.hc2),
        GammaKind::VeryWeakRich => very_weak_ratio(p.hd2, p.hc2),
    };
    0.5 * log2(1.0 + num / den)
}

/// Residual of `1/4 log(1/2 + h_r^2 gamma^2) = target`.
pub fn gamma_residual(kind: GammaKind, p: &GaussParams, gamma: f64) -> f64 {
    0.25 * log2(0.5 + p.hr2 * gamma * gamma) - relayed_common_rate(kind, p)
}

/// Fraction of relay amplitude spent forwarding the modulo sum, chosen so the
/// relayed common message gets the same rate through the relay band as
/// through the interference channel.
///
/// Closed form: `gamma^2 = (2^(4 t) - 1/2) / h_r^2` with `t` that common rate.
pub fn solve_gamma(kind: GammaKind, p: &GaussParams) -> Result<f64> {
    let t = relayed_common_rate(kind, p);
    let g2 = ((4.0 * t).exp2() - 0.5) / p.hr2;
    // Allow rounding right at the limited/rich seam, where gamma^2 = 1.
    if !(0.0..=1.0 + 1e-12).contains(&g2) {
        return Err(Error::RegimeMismatch(format!(
            "{kind:?} relay split needs gamma^2 in (0, 1], got {g2} at {p:?}"
        )));
    }
    let gamma = g2.min(1.0).sqrt();
    let res = gamma_residual(kind, p, gamma);
    if res.abs() > GAMMA_RESIDUAL {
        return Err(Error::RegimeMismatch(format!(
            "gamma residual {res:e} exceeds tolerance at {p:?}"
        )));
    }
    Ok(gamma)
}

/// Residual of `1 - theta^2 = h_d^2 / (h_c^2 (h_c^2 - 1))`.
pub fn theta_residual(p: &GaussParams, theta: f64) -> f64 {
    (1.0 - theta * theta) - p.hd2 / (p.hc2 * (p.hc2 - 1.0))
}

/// Split of the common layer that aligns the cross-received part of one
/// common message with the other user's private layer.
pub fn solve_theta(p: &GaussParams) -> Result<f64> {
    if !(p.hc2 > 1.0 && in_weak_band(p.hd2, p.hc2)) {
        return Err(Error::RegimeMismatch(format!(
            "alignment needs h_c^4 >= h_d^2 + h_c^2, got h_d^2 = {}, h_c^2 = {}",
            p.hd2, p.hc2
        )));
    }
    let t2 = 1.0 - p.hd2 / (p.hc2 * (p.hc2 - 1.0));
    let theta = t2.clamp(0.0, 1.0).sqrt();
    let res = theta_residual(p, theta);
    if res.abs() > THETA_RESIDUAL {
        return Err(Error::RegimeMismatch(format!(
            "theta residual {res:e} exceeds tolerance"
        )));
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(d: f64, c: f64, r: f64) -> GaussParams {
        GaussParams::new(d, c, r).unwrap()
    }

    #[test]
    fn very_strong_example() {
        let g = solve_gamma(GammaKind::VeryStrong, &gp(4.0, 100.0, 1000.0)).unwrap();
        assert!((g * g - 0.0355).abs() < 1e-12);
        // 1/4 log2(0.5 + 35.5) = 1/2 log2 6
        assert!((0.25 * (0.5f64 + 1000.0 * g * g).log2() - 0.5 * 6f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn strong_relay_drives_gamma_to_zero() {
        let a = solve_gamma(GammaKind::VeryStrong, &gp(4.0, 100.0, 1e6)).unwrap();
        let b = solve_gamma(GammaKind::VeryStrong, &gp(4.0, 100.0, 1e12)).unwrap();
        assert!(b < a && b < 1e-5);
    }

    #[test]
    fn closed_form_identity_for_weak_rich() {
        let p = gp(1e4, 200.0, 1e8);
        let g = solve_gamma(GammaKind::WeakRich, &p).unwrap();
        let r = relayed_common_rate(GammaKind::WeakRich, &p);
        assert!((g * g * p.hr2 - ((4.0 * r).exp2() - 0.5)).abs() < 1e-9);
    }

    #[test]
    fn limited_relay_is_a_regime_mismatch() {
        assert!(matches!(
            solve_gamma(GammaKind::VeryStrong, &gp(4.0, 100.0, 4.0)),
            Err(Error::RegimeMismatch(_))
        ));
    }

    #[test]
    fn theta_examples() {
        // h_c^4 = h_d^2 + h_c^2: 4 = 2 + 2.
        assert_eq!(solve_theta(&gp(2.0, 2.0, 1.0)).unwrap(), 0.0);
        let t = solve_theta(&gp(4.0, 4.0, 1.0)).unwrap();
        assert!((t - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let t = solve_theta(&gp(1e-9, 4.0, 1.0)).unwrap();
        assert!((t - 1.0).abs() < 1e-9);
        assert!(solve_theta(&gp(10.0, 2.0, 1.0)).is_err());
    }
}
