//! Per-axis grid specifications: `min:max:step`, `log:lo:hi:count`, or `v1,v2,...`.

use std::str::FromStr;

use icobr_core::gausscap::log_space;
use num_rational::Rational64;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum AxisSpec {
    Range { min: String, max: String, step: String },
    Log { lo: String, hi: String, count: String },
    List(Vec<String>),
}

impl FromStr for AxisSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("log:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(CliError::usage(format!("log axis needs log:lo:hi:count, got {s:?}")));
            }
            return Ok(AxisSpec::Log {
                lo: parts[0].into(),
                hi: parts[1].into(),
                count: parts[2].into(),
            });
        }
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(CliError::usage(format!("range needs min:max:step, got {s:?}")));
            }
            return Ok(AxisSpec::Range {
                min: parts[0].into(),
                max: parts[1].into(),
                step: parts[2].into(),
            });
        }
        let items: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
        if items.iter().any(|x| x.is_empty()) {
            return Err(CliError::usage(format!("empty entry in list {s:?}")));
        }
        Ok(AxisSpec::List(items))
    }
}

fn parse<T: FromStr>(axis: &str, s: &str) -> Result<T, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::usage(format!("axis {axis}: cannot parse {s:?}")))
}

fn degenerate(axis: &str, what: &str) -> CliError {
    CliError::usage(format!("axis {axis}: degenerate range ({what})"))
}

/// Accepts `p/q`, integers and plain decimals such as `1.25`.
pub fn parse_ratio(axis: &str, s: &str) -> Result<Rational64, CliError> {
    let s = s.trim();
    let bad = || CliError::usage(format!("axis {axis}: cannot parse ratio {s:?}"));
    if s.contains('/') {
        let r: Rational64 = s.parse().map_err(|_| bad())?;
        return Ok(r);
    }
    match s.split_once('.') {
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
        Some((int, frac)) => {
            if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = int.starts_with('-');
            let whole: i64 = match int {
                "" | "-" | "+" => 0,
                _ => int.parse().map_err(|_| bad())?,
            };
            let den = 10i64.pow(frac.len() as u32);
            let f: i64 = frac.parse().map_err(|_| bad())?;
            let num = whole.abs() * den + f;
            Ok(Rational64::new(if neg { -num } else { num }, den))
        }
    }
}

fn sorted<T: PartialOrd + Clone>(mut v: Vec<T>) -> Vec<T> {
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    v.dedup_by(|a, b| a == b);
    v
}

impl AxisSpec {
    pub fn integers(&self, axis: &str) -> Result<Vec<i64>, CliError> {
        let v = match self {
            AxisSpec::List(items) => items.iter().map(|s| parse(axis, s)).collect::<Result<_, _>>()?,
            AxisSpec::Range { min, max, step } => {
                let (a, b, h): (i64, i64, i64) = (parse(axis, min)?, parse(axis, max)?, parse(axis, step)?);
                if h <= 0 || b < a {
                    return Err(degenerate(axis, "need step > 0 and max >= min"));
                }
                (0..).map(|k| a + k * h).take_while(|x| *x <= b).collect()
            }
            AxisSpec::Log { .. } => {
                return Err(CliError::usage(format!("axis {axis} is integer; log spacing is not allowed")))
            }
        };
        Ok(sorted(v))
    }

    pub fn reals(&self, axis: &str) -> Result<Vec<f64>, CliError> {
        let v: Vec<f64> = match self {
            AxisSpec::List(items) => items.iter().map(|s| parse(axis, s)).collect::<Result<_, _>>()?,
            AxisSpec::Range { min, max, step } => {
                let (a, b, h): (f64, f64, f64) = (parse(axis, min)?, parse(axis, max)?, parse(axis, step)?);
                if !(h > 0.0 && b >= a && a.is_finite() && b.is_finite()) {
                    return Err(degenerate(axis, "need step > 0 and max >= min"));
                }
                let n = ((b - a) / h + 1e-9).floor() as usize + 1;
                (0..n).map(|k| a + k as f64 * h).collect()
            }
            AxisSpec::Log { lo, hi, count } => {
                let (a, b, n): (f64, f64, usize) = (parse(axis, lo)?, parse(axis, hi)?, parse(axis, count)?);
                if !(a > 0.0 && b.is_finite()) || b < a || n == 0 || (n == 1) != (a == b) {
                    return Err(degenerate(axis, "need 0 < lo < hi and count >= 2"));
                }
                if n == 1 {
                    vec![a]
                } else {
                    log_space(a, b, n)
                }
            }
        };
        if v.iter().any(|x| !x.is_finite()) {
            return Err(CliError::usage(format!("axis {axis}: values must be finite")));
        }
        Ok(sorted(v))
    }

    pub fn ratios(&self, axis: &str) -> Result<Vec<Rational64>, CliError> {
        let v = match self {
            AxisSpec::List(items) => items.iter().map(|s| parse_ratio(axis, s)).collect::<Result<_, _>>()?,
            AxisSpec::Range { min, max, step } => {
                let (a, b, h) = (parse_ratio(axis, min)?, parse_ratio(axis, max)?, parse_ratio(axis, step)?);
                if h <= Rational64::from_integer(0) || b < a {
                    return Err(degenerate(axis, "need step > 0 and max >= min"));
                }
                let mut out = Vec::new();
                let mut x = a;
                while x <= b {
                    out.push(x);
                    x += h;
                }
                out
            }
            AxisSpec::Log { .. } => {
                return Err(CliError::usage(format!("axis {axis} is a ratio; log spacing is not allowed")))
            }
        };
        Ok(sorted(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> AxisSpec {
        s.parse().unwrap()
    }

    #[test]
    fn integer_ranges_and_lists() {
        assert_eq!(spec("0:8:2").integers("n").unwrap(), vec![0, 2, 4, 6, 8]);
        assert_eq!(spec("3,1,3,2").integers("n").unwrap(), vec![1, 2, 3]);
        assert!(spec("4:2:1").integers("n").is_err());
        assert!(spec("0:4:0").integers("n").is_err());
        assert!(spec("log:1:10:3").integers("n").is_err());
        assert!(spec("1.5").integers("n").is_err());
    }

    #[test]
    fn real_axes() {
        assert_eq!(spec("0.5:1.5:0.5").reals("x").unwrap(), vec![0.5, 1.0, 1.5]);
        let l = spec("log:1:100:3").reals("x").unwrap();
        assert_eq!(l.len(), 3);
        assert!((l[1] - 10.0).abs() < 1e-12);
        assert!(spec("log:0:1:3").reals("x").is_err());
        assert!(spec("log:1:10:1").reals("x").is_err());
        assert_eq!(spec("log:5:5:1").reals("x").unwrap(), vec![5.0]);
    }

    #[test]
    fn ratio_axes() {
        let r = |n, d| Rational64::new(n, d);
        assert_eq!(spec("0:1:1/3").ratios("c").unwrap(), vec![r(0, 1), r(1, 3), r(2, 3), r(1, 1)]);
        assert_eq!(spec("0.5,2,1.25").ratios("c").unwrap(), vec![r(1, 2), r(5, 4), r(2, 1)]);
        assert_eq!(parse_ratio("c", "-0.5").unwrap(), r(-1, 2));
        assert!(parse_ratio("c", "x").is_err());
        assert!(parse_ratio("c", "1.").is_err());
    }

    #[test]
    fn malformed_specs() {
        assert!("1:2".parse::<AxisSpec>().is_err());
        assert!("log:1:2".parse::<AxisSpec>().is_err());
        assert!("1,,2".parse::<AxisSpec>().is_err());
    }
}
