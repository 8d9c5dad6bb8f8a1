use serde::Serialize;

use crate::error::{Error, Result};

/// Gaussian channel gains with unit transmit powers and unit-variance noise.
///
/// Gains are stored squared (`hd2 = h_d^2`, ...) because every formula uses
/// them that way and it keeps regime comparisons free of square roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussParams {
    pub hd2: f64,
    pub hc2: f64,
    pub hr2: f64,
    /// Fraction of the block during which the relay listens.
    pub alpha: f64,
}

impl GaussParams {
    /// Squared gains with the relay listening half the time.
    pub fn new(hd2: f64, hc2: f64, hr2: f64) -> Result<Self> {
        Self::with_alpha(hd2, hc2, hr2, 0.5)
    }

    pub fn with_alpha(hd2: f64, hc2: f64, hr2: f64, alpha: f64) -> Result<Self> {
        for (name, v) in [("h_d^2", hd2), ("h_c^2", hc2), ("h_r^2", hr2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be positive, got {v}")));
            }
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidInput(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        Ok(Self {
            hd2,
            hc2,
            hr2,
            alpha,
        })
    }

    /// From amplitude gains.
    pub fn from_gains(h_d: f64, h_c: f64, h_r: f64, alpha: f64) -> Result<Self> {
        Self::with_alpha(h_d * h_d, h_c * h_c, h_r * h_r, alpha)
    }

    pub fn h_d(&self) -> f64 {
        self.hd2.sqrt()
    }

    pub fn h_c(&self) -> f64 {
        self.hc2.sqrt()
    }

    pub fn h_r(&self) -> f64 {
        self.hr2.sqrt()
    }

    /// Inside the domain where achievable rates are audited (`h_d, h_c >= 1`).
    pub fn in_audit_domain(&self) -> bool {
        self.hd2 >= 1.0 && self.hc2 >= 1.0
    }
}
