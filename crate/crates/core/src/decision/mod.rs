//! End-to-end access decisions, failure sessions and parameter sweeps.

mod session;
mod sweep;

pub use session::{AuthSession, EventSink, SessionState};
pub use sweep::{
    sweep_penalty, sweep_thresholds, write_penalty_csv, write_threshold_csv, PenaltyRow, SweepParams,
    ThresholdRow, DEFAULT_SAMPLES,
};

use serde::{Deserialize, Serialize};

use crate::ahp::ServiceCatalog;
use crate::error::{Error, Result};
use crate::history::{AnomalyConfig, AnomalyReport, AuthHistoryStats, HistoryLog};
use crate::trust::{
    adjust_thresholds, decide_rank, trust_value, AdjustedThresholds, PenaltyState, Rank, TrustEvaluation,
    TrustRank, TrustThresholds,
};

/// What to do with a user whose PIN record recently turned bad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnomalyMode {
    Off,
    #[default]
    Demote,
    ForceLow,
}

impl std::str::FromStr for AnomalyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(AnomalyMode::Off),
            "demote" => Ok(AnomalyMode::Demote),
            "force-low" => Ok(AnomalyMode::ForceLow),
            _ => Err(Error::Parse(format!("unknown anomaly mode {s:?}"))),
        }
    }
}

/// Which failures a session writes to the history log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureRecording {
    /// One Failure event when the session locks out.
    #[default]
    TerminalOnly,
    EveryFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EngineConfig {
    pub anomaly: AnomalyConfig,
    pub anomaly_mode: AnomalyMode,
    /// Most recent events used for the history ratios; all when `None`.
    pub stats_window: Option<usize>,
    pub failure_recording: FailureRecording,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccessRequest {
    pub user: String,
    pub level: String,
    pub thresholds: TrustThresholds,
    /// PIN trial budget; also sizes the penalty coefficient.
    pub max_failures: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthDecision {
    pub level: String,
    pub sensitive_value: f64,
    pub evaluation: TrustEvaluation,
    /// Trust value before the failure penalty.
    pub y: f64,
    /// Trust value after the failure penalty.
    pub y_effective: f64,
    pub stats: Option<AuthHistoryStats>,
    pub adjusted: AdjustedThresholds,
    pub penalty: PenaltyState,
    /// Exactly `decide_rank(y_effective, adjusted)`.
    pub region: TrustRank,
    /// The region after anomaly policy and lockout.
    pub rank: TrustRank,
    pub anomaly: AnomalyReport,
    pub locked_out: bool,
}

/// Everything about a request that stays fixed while failures accrue.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Baseline {
    level: String,
    sensitive_value: f64,
    evaluation: TrustEvaluation,
    stats: Option<AuthHistoryStats>,
    adjusted: AdjustedThresholds,
    penalty: PenaltyState,
    anomaly: AnomalyReport,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecisionEngine {
    pub config: EngineConfig,
}

impl DecisionEngine {
    pub fn new(config: EngineConfig) -> Self {
        Self { config }
    }

    pub(crate) fn baseline(
        &self,
        request: &AccessRequest,
        catalog: &ServiceCatalog,
        log: &HistoryLog,
    ) -> Result<Baseline> {
        let entry = catalog.get(&request.level).ok_or_else(|| Error::UnknownLevel(request.level.clone()))?;
        let stats = log.compute_stats(&request.user, self.config.stats_window);
        let adjusted = adjust_thresholds(&request.thresholds, stats.as_ref())?;
        let evaluation = trust_value(entry.sensitive_value, &request.thresholds, catalog)?;
        let penalty = PenaltyState::new(&request.thresholds, request.max_failures)?;
        let anomaly = log.detect_anomaly(&request.user, &self.config.anomaly);
        Ok(Baseline {
            level: entry.level.clone(),
            sensitive_value: entry.sensitive_value,
            evaluation,
            stats,
            adjusted,
            penalty,
            anomaly,
        })
    }

    pub(crate) fn decide(&self, base: &Baseline, failures: u32, locked_out: bool) -> AuthDecision {
        let penalty = base.penalty.with_failures(failures);
        let y = base.evaluation.y;
        let y_effective = penalty.apply(y);
        let region = decide_rank(y_effective, &base.adjusted);
        let mut rank = region.rank;
        if base.anomaly.flagged {
            rank = match self.config.anomaly_mode {
                AnomalyMode::Off => rank,
                AnomalyMode::Demote => rank.demoted(),
                AnomalyMode::ForceLow => Rank::Low,
            };
        }
        if locked_out {
            rank = Rank::Low;
        }
        AuthDecision {
            level: base.level.clone(),
            sensitive_value: base.sensitive_value,
            evaluation: base.evaluation,
            y,
            y_effective,
            stats: base.stats,
            adjusted: base.adjusted,
            penalty,
            region,
            rank: rank.into(),
            anomaly: base.anomaly.clone(),
            locked_out,
        }
    }

    /// Decision for a fresh request with no failures so far.
    pub fn evaluate_access(
        &self,
        request: &AccessRequest,
        catalog: &ServiceCatalog,
        log: &HistoryLog,
    ) -> Result<AuthDecision> {
        self.evaluate_with_failures(request, catalog, log, 0)
    }

    /// Decision after `failures` failed attempts in the current session.
    /// Reaching the trial budget locks the request out to biometrics.
    pub fn evaluate_with_failures(
        &self,
        request: &AccessRequest,
        catalog: &ServiceCatalog,
        log: &HistoryLog,
        failures: u32,
    ) -> Result<AuthDecision> {
        let base = self.baseline(request, catalog, log)?;
        Ok(self.decide(&base, failures, failures >= request.max_failures))
    }
}
