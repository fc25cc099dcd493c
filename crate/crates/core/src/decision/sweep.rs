//! Upper-threshold sweeps with and without the failure penalty.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::ahp::ServiceCatalog;
use crate::error::{Error, Result};
use crate::history::AuthHistoryStats;
use crate::trust::{
    adjust_thresholds, apply_penalty, decide_rank, penalty_coefficient, trust_value, Rank, TrustThresholds,
};

/// Sensitive values of the three sample services (C, G and H levels).
pub const DEFAULT_SAMPLES: [f64; 3] = [0.1577, 0.0353, 0.0248];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub s_values: Vec<f64>,
    pub lower: f64,
    pub upper_min: f64,
    pub upper_max: f64,
    pub step: f64,
    pub stats: Option<AuthHistoryStats>,
    pub max_failures: u32,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            s_values: DEFAULT_SAMPLES.to_vec(),
            lower: 0.3,
            upper_min: 0.51,
            upper_max: 1.0,
            step: 0.01,
            stats: None,
            max_failures: 5,
        }
    }
}

impl SweepParams {
    /// Stats standing in for a user with `T1 = t1`, `T2 = t2`.
    pub fn with_history(mut self, t1: f64, t2: f64) -> Self {
        self.stats = Some(AuthHistoryStats { t1, t2: Some(t2), t3: None, total_events: 0, pin_attempts: 0 });
        self
    }

    /// The upper-threshold grid `upper_min, upper_min + step, ..., upper_max`.
    pub fn upper_grid(&self) -> Result<Vec<f64>> {
        let (min, max, step) = (self.upper_min, self.upper_max, self.step);
        if self.s_values.is_empty() {
            return Err(Error::InvalidSweep("no sensitive values given".into()));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidSweep(format!("step must be positive, got {step}")));
        }
        if !(min > 0.5) || !(max <= 1.0) || !(min <= max) {
            return Err(Error::InvalidSweep(format!(
                "upper range must satisfy 0.5 < min <= max <= 1, got [{min}, {max}]"
            )));
        }
        let count = ((max - min) / step + 1e-9).floor() as usize;
        Ok((0..=count).map(|k| (min + k as f64 * step).min(max)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub upper: f64,
    pub s: f64,
    pub y: f64,
    pub lower_adj: f64,
    pub upper_adj: f64,
    pub rank: Rank,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltyRow {
    pub upper: f64,
    pub s: f64,
    pub n: u32,
    pub y_effective: f64,
    pub rank: Rank,
}

/// Trust value and rank of each sample service across the upper-threshold
/// grid, lower threshold fixed. Rows are ordered by upper threshold, then
/// by sample in the given order.
pub fn sweep_thresholds(catalog: &ServiceCatalog, params: &SweepParams) -> Result<Vec<ThresholdRow>> {
    let mut rows = Vec::new();
    for upper in params.upper_grid()? {
        let thresholds = TrustThresholds::new(params.lower, upper)?;
        let adjusted = adjust_thresholds(&thresholds, params.stats.as_ref())?;
        for &s in &params.s_values {
            let y = trust_value(s, &thresholds, catalog)?.y;
            rows.push(ThresholdRow {
                upper,
                s,
                y,
                lower_adj: adjusted.lower,
                upper_adj: adjusted.upper,
                rank: decide_rank(y, &adjusted).rank,
            });
        }
    }
    Ok(rows)
}

/// Like [`sweep_thresholds`] with `0..=max_failures` failures applied,
/// the penalty coefficient recomputed for every upper threshold.
pub fn sweep_penalty(catalog: &ServiceCatalog, params: &SweepParams) -> Result<Vec<PenaltyRow>> {
    let mut rows = Vec::new();
    for upper in params.upper_grid()? {
        let thresholds = TrustThresholds::new(params.lower, upper)?;
        let adjusted = adjust_thresholds(&thresholds, params.stats.as_ref())?;
        let p = penalty_coefficient(&thresholds, params.max_failures)?;
        for &s in &params.s_values {
            let y = trust_value(s, &thresholds, catalog)?.y;
            for n in 0..=params.max_failures {
                let y_effective = apply_penalty(y, p, n);
                rows.push(PenaltyRow {
                    upper,
                    s,
                    n,
                    y_effective,
                    rank: decide_rank(y_effective, &adjusted).rank,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_threshold_csv(rows: &[ThresholdRow], mut out: impl Write) -> Result<()> {
    writeln!(out, "upper,s,y,lower_adj,upper_adj,rank")?;
    for r in rows {
        writeln!(
            out,
            "{:.6},{:.6},{:.6},{:.6},{:.6},{}",
            r.upper, r.s, r.y, r.lower_adj, r.upper_adj, r.rank
        )?;
    }
    Ok(())
}

pub fn write_penalty_csv(rows: &[PenaltyRow], mut out: impl Write) -> Result<()> {
    writeln!(out, "upper,s,n,y_effective,rank")?;
    for r in rows {
        writeln!(out, "{:.6},{:.6},{},{:.6},{}", r.upper, r.s, r.n, r.y_effective, r.rank)?;
    }
    Ok(())
}
