//! Weighted two-point power means and the classical mean functions used by
//! the inequality checks: the geometric mean G and the logarithmic mean L.
//!
//! The weighted power mean is
//!
//! ```text
//! M_r(x, y; t) = ((1-t) x^r + t y^r)^(1/r)      (finite r != 0)
//! M_0(x, y; t) = x^(1-t) y^t                    (geometric limit)
//! ```
//!
//! with `min`/`max` at r = -inf / +inf. `M_r` is nondecreasing in r, which is
//! what makes the convexity-index bisection in [`crate::classify`] well posed.

use std::fmt;
use std::str::FromStr;

/// Below this magnitude the finite-r formula has no significant digits left
/// and the geometric branch is used instead.
pub const R_ZERO_THRESHOLD: f64 = 1e-8;

/// Relative proximity at which `log_mean` switches to its series expansion.
const LOG_MEAN_PROXIMITY: f64 = 1e-6;

/// The exponent of a power mean: a finite real or a `-inf`/`+inf` sentinel.
///
/// `Finite(0.0)` is legal and denotes the geometric-mean case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerParam {
    NegInf,
    Finite(f64),
    PosInf,
}

impl PowerParam {
    /// Wraps an `f64`, mapping IEEE infinities to the sentinels.
    pub fn from_f64(r: f64) -> Result<Self, MeanError> {
        if r.is_nan() {
            Err(MeanError::NanParameter)
        } else if r == f64::INFINITY {
            Ok(PowerParam::PosInf)
        } else if r == f64::NEG_INFINITY {
            Ok(PowerParam::NegInf)
        } else {
            Ok(PowerParam::Finite(r))
        }
    }

    pub fn finite(r: f64) -> Result<Self, MeanError> {
        match Self::from_f64(r)? {
            p @ PowerParam::Finite(_) => Ok(p),
            _ => Err(MeanError::NanParameter),
        }
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            PowerParam::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// True when this exponent routes to the geometric branch.
    pub fn is_geometric(self) -> bool {
        matches!(self, PowerParam::Finite(r) if r.abs() < R_ZERO_THRESHOLD)
    }
}

impl fmt::Display for PowerParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerParam::NegInf => write!(f, "-inf"),
            PowerParam::PosInf => write!(f, "inf"),
            // `{:?}` prints the shortest decimal that round-trips exactly.
            PowerParam::Finite(r) => write!(f, "{r:?}"),
        }
    }
}

impl FromStr for PowerParam {
    type Err = MeanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" => Ok(PowerParam::PosInf),
            "-inf" => Ok(PowerParam::NegInf),
            other => {
                let r: f64 = other.parse().map_err(|_| MeanError::NanParameter)?;
                PowerParam::from_f64(r)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeanError {
    #[error("{name} must be a strictly positive real, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("weight t must lie in [0, 1], got {t}")]
    WeightOutOfRange { t: f64 },
    #[error("power parameter must be a real number or an infinity sentinel")]
    NanParameter,
}

fn ensure_positive(name: &'static str, value: f64) -> Result<(), MeanError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(MeanError::NonPositive { name, value })
    }
}

/// Weighted two-point power mean `M_r(x, y; t)` with weight `t` on `y`.
///
/// The finite-r branch works in the log domain throughout, so `x^r`/`y^r`
/// never overflow or underflow intermediate storage.
pub fn power_mean(x: f64, y: f64, t: f64, r: PowerParam) -> Result<f64, MeanError> {
    ensure_positive("x", x)?;
    ensure_positive("y", y)?;
    if t.is_nan() || !(0.0..=1.0).contains(&t) {
        return Err(MeanError::WeightOutOfRange { t });
    }
    Ok(match r {
        PowerParam::NegInf => {
            if t == 0.0 {
                x
            } else if t == 1.0 {
                y
            } else {
                x.min(y)
            }
        }
        PowerParam::PosInf => {
            if t == 0.0 {
                x
            } else if t == 1.0 {
                y
            } else {
                x.max(y)
            }
        }
        PowerParam::Finite(r) if r.abs() < R_ZERO_THRESHOLD => geometric_weighted(x, y, t),
        PowerParam::Finite(r) => finite_power_mean(x, y, t, r),
    })
}

fn geometric_weighted(x: f64, y: f64, t: f64) -> f64 {
    ((1.0 - t) * x.ln() + t * y.ln()).exp()
}

fn finite_power_mean(x: f64, y: f64, t: f64, r: f64) -> f64 {
    if t == 0.0 {
        return x;
    }
    if t == 1.0 {
        return y;
    }
    let u = r * x.ln();
    let v = r * y.ln();
    let m = u.max(v);
    // (1-t) e^(u-m) + t e^(v-m) = 1 + s with s in (-1, 0]; expm1/ln_1p keep
    // full relative accuracy for |r| down to the geometric threshold.
    let s = (1.0 - t) * (u - m).exp_m1() + t * (v - m).exp_m1();
    ((m + s.ln_1p()) / r).exp()
}

/// Geometric mean `G(p, q) = sqrt(pq)`, evaluated as `exp((ln p + ln q)/2)`
/// so that the product cannot overflow.
pub fn geo_mean(p: f64, q: f64) -> Result<f64, MeanError> {
    ensure_positive("p", p)?;
    ensure_positive("q", q)?;
    Ok((0.5 * (p.ln() + q.ln())).exp())
}

/// Logarithmic mean `L(p, q) = (p - q)/(ln p - ln q)`, with `L(p, p) = p`.
///
/// Near-equal arguments route through a short expansion around the midpoint;
/// the direct quotient cancels catastrophically there.
pub fn log_mean(p: f64, q: f64) -> Result<f64, MeanError> {
    ensure_positive("p", p)?;
    ensure_positive("q", q)?;
    if p == q {
        return Ok(p);
    }
    let diff = p - q;
    if diff.abs() <= LOG_MEAN_PROXIMITY * p.max(q) {
        // L = a / (1 + z^2/3 + z^4/5 + ...) with a the midpoint, z = (p-q)/(p+q).
        let a = 0.5 * (p + q);
        let z = 0.5 * diff / a;
        let z2 = z * z;
        return Ok(a * (1.0 - z2 / 3.0 - 4.0 * z2 * z2 / 45.0));
    }
    // ln p - ln q via ln_1p keeps the denominator accurate when p ~ q.
    Ok(diff / (diff / q).ln_1p())
}
