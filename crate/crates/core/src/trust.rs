//! Trust regions, history-adjusted thresholds, trust values and the
//! failure penalty.
//!
//! Everything here is a pure function of its arguments.

use std::f64::consts::E;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ahp::ServiceCatalog;
use crate::error::{Error, Result};
use crate::history::AuthHistoryStats;

/// Customer-chosen region boundaries `0 <= lower <= 0.5 < upper <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrustThresholds {
    lower: f64,
    upper: f64,
}

impl TrustThresholds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&lower) || !(upper > 0.5 && upper <= 1.0) {
            return Err(Error::InvalidThresholds { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// `(upper + lower + 1) / 2`, offsetting thresholds set too high or too low.
    pub fn calibration(&self) -> f64 {
        (self.upper + self.lower + 1.0) / 2.0
    }

    /// The same thresholds treated as already adjusted (no history shift).
    pub fn unadjusted(&self) -> AdjustedThresholds {
        AdjustedThresholds { lower: self.lower, upper: self.upper, lower_shift: 0.0, upper_shift: 0.0 }
    }
}

/// Thresholds after the authentication-history shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjustedThresholds {
    pub lower: f64,
    pub upper: f64,
    pub lower_shift: f64,
    pub upper_shift: f64,
}

fn check_ratio(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::RatioOutOfRange { name, value })
    }
}

/// Lower-threshold shift from the PIN success ratio.
///
/// Zero for a perfect PIN record, the full medium band `upper - lower`
/// when every PIN attempt failed.
pub fn history_adjustment_a(t2: f64, thresholds: &TrustThresholds) -> Result<f64> {
    let t2 = check_ratio("t2", t2)?;
    Ok(((1.0 - t2).exp() - 1.0) / (E - 1.0) * (thresholds.upper - thresholds.lower))
}

/// Upper-threshold shift from the high-rank login ratio.
///
/// Flatter than the lower shift: at most `(e - 1)/(e + 1)` of the high band.
pub fn history_adjustment_b(t1: f64, thresholds: &TrustThresholds) -> Result<f64> {
    let t1 = check_ratio("t1", t1)?;
    Ok(((1.0 - t1).exp() - 1.0) / (E + 1.0) * (1.0 - thresholds.upper))
}

/// Shifts the thresholds by the user's history; no history means no shift.
///
/// A user with no PIN attempts gets no lower shift.
pub fn adjust_thresholds(
    thresholds: &TrustThresholds,
    stats: Option<&AuthHistoryStats>,
) -> Result<AdjustedThresholds> {
    let Some(stats) = stats else {
        return Ok(thresholds.unadjusted());
    };
    let a = match stats.t2 {
        Some(t2) => history_adjustment_a(t2, thresholds)?,
        None => 0.0,
    };
    let b = history_adjustment_b(stats.t1, thresholds)?;
    Ok(AdjustedThresholds {
        lower: thresholds.lower + a,
        upper: thresholds.upper + b,
        lower_shift: a,
        upper_shift: b,
    })
}

/// Log-scaled position of `s` between the least and most sensitive
/// catalog entries, in `[0, 1]`.
pub fn normalized_sensitivity(s: f64, catalog: &ServiceCatalog) -> Result<f64> {
    let (min, max) = (catalog.min_value(), catalog.max_value());
    if !(max > min) {
        return Err(Error::InvalidCatalog("catalog needs at least two distinct sensitive values".into()));
    }
    if !(s >= min && s <= max) {
        return Err(Error::SensitivityOutOfRange { value: s, min, max });
    }
    Ok((s.log10() - min.log10()) / (max.log10() - min.log10()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrustEvaluation {
    pub s_prime: f64,
    pub y_star: f64,
    pub calibration: f64,
    /// `y_star * calibration` before clamping.
    pub y_unclamped: f64,
    /// Trust value clamped into `[0, 1]`.
    pub y: f64,
}

pub fn trust_value(
    s: f64,
    thresholds: &TrustThresholds,
    catalog: &ServiceCatalog,
) -> Result<TrustEvaluation> {
    let s_prime = normalized_sensitivity(s, catalog)?;
    let y_star = 1.0 - s_prime;
    let calibration = thresholds.calibration();
    let y_unclamped = y_star * calibration;
    Ok(TrustEvaluation { s_prime, y_star, calibration, y_unclamped, y: y_unclamped.clamp(0.0, 1.0) })
}

/// Per-failure decay `P = (lower / upper)^(1 / n_max)`, so that `n_max`
/// failures take a trust value of `upper` down to `lower`.
pub fn penalty_coefficient(thresholds: &TrustThresholds, n_max: u32) -> Result<f64> {
    if n_max == 0 {
        return Err(Error::InvalidPenalty("trial budget must be at least 1".into()));
    }
    if thresholds.lower <= 0.0 {
        return Err(Error::InvalidPenalty(
            "lower threshold 0 gives P = 0: a single failure would zero the trust value".into(),
        ));
    }
    Ok((thresholds.lower / thresholds.upper).powf(1.0 / f64::from(n_max)))
}

/// `y * p^n`.
pub fn apply_penalty(y: f64, p: f64, n: u32) -> f64 {
    y * p.powi(n as i32)
}

/// Penalty coefficient together with the failure count it has been applied for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltyState {
    pub coefficient: f64,
    pub failures: u32,
    pub max_failures: u32,
}

impl PenaltyState {
    pub fn new(thresholds: &TrustThresholds, max_failures: u32) -> Result<Self> {
        Ok(Self { coefficient: penalty_coefficient(thresholds, max_failures)?, failures: 0, max_failures })
    }

    pub fn with_failures(mut self, failures: u32) -> Self {
        self.failures = failures;
        self
    }

    pub fn apply(&self, y: f64) -> f64 {
        apply_penalty(y, self.coefficient, self.failures)
    }

    pub fn exhausted(&self) -> bool {
        self.failures >= self.max_failures
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rank {
    Low,
    Medium,
    High,
}

impl Rank {
    pub fn required_method(self) -> AuthMethod {
        match self {
            Rank::High => AuthMethod::None,
            Rank::Medium => AuthMethod::Pin,
            Rank::Low => AuthMethod::Biometric,
        }
    }

    /// One step stricter; `Low` stays `Low`.
    pub fn demoted(self) -> Rank {
        match self {
            Rank::High => Rank::Medium,
            Rank::Medium | Rank::Low => Rank::Low,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rank::Low => "low",
            Rank::Medium => "medium",
            Rank::High => "high",
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rank::Low => "Low",
            Rank::Medium => "Medium",
            Rank::High => "High",
        })
    }
}

impl std::str::FromStr for Rank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "low" => Ok(Rank::Low),
            "medium" => Ok(Rank::Medium),
            "high" => Ok(Rank::High),
            _ => Err(Error::Parse(format!("unknown rank {s:?}"))),
        }
    }
}

/// Authentication method, ordered weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuthMethod {
    None,
    Pin,
    Biometric,
}

impl AuthMethod {
    pub fn rank(self) -> Rank {
        match self {
            AuthMethod::None => Rank::High,
            AuthMethod::Pin => Rank::Medium,
            AuthMethod::Biometric => Rank::Low,
        }
    }
}

impl fmt::Display for AuthMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuthMethod::None => "None",
            AuthMethod::Pin => "PIN",
            AuthMethod::Biometric => "Biometric",
        })
    }
}

impl std::str::FromStr for AuthMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(AuthMethod::None),
            "pin" => Ok(AuthMethod::Pin),
            "biometric" => Ok(AuthMethod::Biometric),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrustRank {
    pub rank: Rank,
    pub required_method: AuthMethod,
}

impl From<Rank> for TrustRank {
    fn from(rank: Rank) -> Self {
        Self { rank, required_method: rank.required_method() }
    }
}

/// Maps a trust value onto `[0, lower)`, `[lower, upper)`, `[upper, 1]`.
/// A value on a boundary belongs to the higher region.
pub fn decide_rank(y_effective: f64, adjusted: &AdjustedThresholds) -> TrustRank {
    let rank = if y_effective < adjusted.lower {
        Rank::Low
    } else if y_effective < adjusted.upper {
        Rank::Medium
    } else {
        Rank::High
    };
    rank.into()
}
