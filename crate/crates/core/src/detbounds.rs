//! Closed-form sum capacity and outer region of the deterministic IC-OBR.
//!
//! Every quantity is an integer plus possibly one half, so values are kept as
//! doubled integers ([`HalfBits`]) and compared exactly.

use std::fmt;
use std::ops::{Add, Sub};

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::detmodel::DetParams;

/// An exact rate in bits per channel use, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfBits(pub i64);

impl HalfBits {
    pub const ZERO: HalfBits = HalfBits(0);

    pub fn from_halves(halves: i64) -> Self {
        Self(halves)
    }

    /// Rate of `bits` bits delivered over a two-use block.
    pub fn per_block(bits: usize) -> Self {
        Self(bits as i64)
    }

    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn to_rational(self) -> Rational64 {
        Rational64::new(self.0, 2)
    }

    pub fn min(self, other: Self) -> Self {
        Ord::min(self, other)
    }
}

impl Add for HalfBits {
    type Output = HalfBits;
    fn add(self, rhs: Self) -> Self {
        HalfBits(self.0 + rhs.0)
    }
}

impl Sub for HalfBits {
    type Output = HalfBits;
    fn sub(self, rhs: Self) -> Self {
        HalfBits(self.0 - rhs.0)
    }
}

impl fmt::Display for HalfBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfBits {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

/// Per-user rates in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DetRatePair {
    pub r1: HalfBits,
    pub r2: HalfBits,
}

impl DetRatePair {
    pub fn sum(&self) -> HalfBits {
        self.r1 + self.r2
    }
}

/// Bounds enclosing the achievable rate region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DetOuterRegion {
    pub individual_bound: HalfBits,
    pub sum_bound: HalfBits,
}

/// Sum capacity with the relay listening for exactly half the time.
pub fn det_sum_capacity(p: &DetParams) -> HalfBits {
    let (d, c, r) = (p.n_d as i64, p.n_c as i64, p.n_r as i64);
    // Everything below is in halves; conditions have their denominators cleared.
    let v = if 2 * c >= 4 * d + r {
        4 * d + 2 * r
    } else if c >= d {
        2 * c + r
    } else if 3 * c >= 2 * d {
        4 * d - 2 * c + r
    } else if 2 * c >= d {
        (4 * c + 2 * r).min(4 * d - 2 * c + r)
    } else {
        (4 * (d - c) + 2 * r).min(4 * d - 2 * c + r)
    };
    HalfBits(v)
}

pub fn det_outer_region(p: &DetParams) -> DetOuterRegion {
    let (d, c, r) = (p.n_d as i64, p.n_c as i64, p.n_r as i64);
    let sum = if c >= d {
        2 * c + r
    } else {
        (2 * r + 4 * (d - c).max(c)).min(4 * d - 2 * c + r)
    };
    DetOuterRegion {
        individual_bound: HalfBits(2 * d + r),
        sum_bound: HalfBits(sum),
    }
}

/// The five branch formulas over the rationals, in order of decreasing `n_c / n_d`.
///
/// Used to check that neighbouring branches agree on their shared boundary.
pub fn capacity_branches(n_d: Rational64, n_c: Rational64, n_r: Rational64) -> [Rational64; 5] {
    let two = Rational64::from_integer(2);
    let half_r = n_r / two;
    let moderate = two * n_d - n_c + half_r;
    [
        two * n_d + n_r,
        n_c + half_r,
        moderate,
        (two * n_c + n_r).min(moderate),
        (two * (n_d - n_c) + n_r).min(moderate),
    ]
}

/// Index into [`capacity_branches`] of the branch whose condition holds.
pub fn capacity_branch_index(n_d: Rational64, n_c: Rational64, n_r: Rational64) -> usize {
    let two = Rational64::from_integer(2);
    let three = Rational64::from_integer(3);
    if n_c >= two * n_d + n_r / two {
        0
    } else if n_c >= n_d {
        1
    } else if three * n_c >= two * n_d {
        2
    } else if two * n_c >= n_d {
        3
    } else {
        4
    }
}

/// Sum capacity at rational level counts.
pub fn det_sum_capacity_rational(n_d: Rational64, n_c: Rational64, n_r: Rational64) -> Rational64 {
    capacity_branches(n_d, n_c, n_r)[capacity_branch_index(n_d, n_c, n_r)]
}

/// The interference-to-direct ratios at which the capacity formula changes branch.
pub fn branch_boundaries(n_d: Rational64, n_r: Rational64) -> [(usize, Rational64); 4] {
    let two = Rational64::from_integer(2);
    let three = Rational64::from_integer(3);
    [
        (0, two * n_d + n_r / two),
        (1, n_d),
        (2, two * n_d / three),
        (3, n_d / two),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap(d: usize, c: usize, r: usize) -> HalfBits {
        det_sum_capacity(&DetParams::new(d, c, r))
    }

    #[test]
    fn worked_examples() {
        assert_eq!(cap(1, 4, 2), HalfBits(8));
        assert_eq!(cap(5, 3, 6), HalfBits(20));
        assert_eq!(cap(3, 0, 0), HalfBits(12));
        assert_eq!(cap(4, 4, 3), HalfBits(11));
        assert_eq!(cap(4, 4, 3).to_string(), "11/2");
    }

    #[test]
    fn outer_region_examples() {
        let o = det_outer_region(&DetParams::new(1, 4, 2));
        assert_eq!((o.individual_bound, o.sum_bound), (HalfBits(4), HalfBits(10)));
        assert_eq!(det_outer_region(&DetParams::new(5, 3, 6)).sum_bound, HalfBits(20));
        let o = det_outer_region(&DetParams::new(7, 0, 0));
        assert_eq!((o.individual_bound, o.sum_bound), (HalfBits(14), HalfBits(28)));
    }

    #[test]
    fn integer_and_rational_forms_agree() {
        for d in 0..10 {
            for c in 0..20 {
                for r in 0..10 {
                    let q = det_sum_capacity_rational(
                        Rational64::from_integer(d),
                        Rational64::from_integer(c),
                        Rational64::from_integer(r),
                    );
                    assert_eq!(cap(d as usize, c as usize, r as usize).to_rational(), q);
                }
            }
        }
    }

    #[test]
    fn capacity_is_bounded_by_outer_region() {
        for d in 0..12 {
            for c in 0..20 {
                for r in 0..12 {
                    let p = DetParams::new(d, c, r);
                    let o = det_outer_region(&p);
                    let s = det_sum_capacity(&p);
                    assert!(s <= o.sum_bound && s <= o.individual_bound + o.individual_bound);
                }
            }
        }
    }
}
