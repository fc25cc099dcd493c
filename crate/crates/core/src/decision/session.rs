use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::{AccessRequest, AuthDecision, Baseline, DecisionEngine, FailureRecording};
use crate::ahp::ServiceCatalog;
use crate::error::{Error, Result};
use crate::history::{AuthEvent, HistoryLog, Outcome, SharedHistory};
use crate::trust::AuthMethod;

/// Destination for the events a session produces.
pub trait EventSink {
    fn record(&mut self, event: AuthEvent) -> Result<()>;
}

impl EventSink for HistoryLog {
    fn record(&mut self, event: AuthEvent) -> Result<()> {
        self.record_event(event)
    }
}

impl EventSink for SharedHistory {
    fn record(&mut self, event: AuthEvent) -> Result<()> {
        self.record_event(event)
    }
}

impl EventSink for Vec<AuthEvent> {
    fn record(&mut self, event: AuthEvent) -> Result<()> {
        event.check()?;
        self.push(event);
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SessionState {
    Open,
    Authenticated,
    /// Trial budget exhausted; only biometric authentication remains.
    LockedOut,
}

/// One access attempt sequence for a single request.
///
/// History statistics are fixed when the session opens; each failure only
/// advances the penalty.
#[derive(Debug, Clone)]
pub struct AuthSession {
    engine: DecisionEngine,
    request: AccessRequest,
    base: Baseline,
    decisions: Vec<AuthDecision>,
    failures: u32,
    state: SessionState,
}

impl AuthSession {
    pub fn open(
        engine: DecisionEngine,
        request: AccessRequest,
        catalog: &ServiceCatalog,
        log: &HistoryLog,
    ) -> Result<Self> {
        let base = engine.baseline(&request, catalog, log)?;
        let first = engine.decide(&base, 0, false);
        Ok(Self { engine, request, base, decisions: vec![first], failures: 0, state: SessionState::Open })
    }

    pub fn request(&self) -> &AccessRequest {
        &self.request
    }

    pub fn current(&self) -> &AuthDecision {
        self.decisions.last().expect("session always has a decision")
    }

    pub fn decisions(&self) -> &[AuthDecision] {
        &self.decisions
    }

    pub fn failures(&self) -> u32 {
        self.failures
    }

    pub fn state(&self) -> SessionState {
        self.state
    }

    pub fn is_terminal(&self) -> bool {
        self.state != SessionState::Open
    }

    /// Reports the outcome of an attempt made with the currently required
    /// method and returns the decision now in force.
    pub fn report_attempt(
        &mut self,
        outcome: Outcome,
        ts: DateTime<Utc>,
        sink: &mut impl EventSink,
    ) -> Result<&AuthDecision> {
        match self.state {
            SessionState::Open => {}
            SessionState::Authenticated => return Err(Error::SessionClosed("already authenticated")),
            SessionState::LockedOut => return Err(Error::SessionClosed("locked out")),
        }
        let attempted = self.current().rank;
        let event =
            AuthEvent::new(ts, self.request.user.clone(), self.base.level.clone(), attempted.rank, outcome);

        match outcome {
            Outcome::Success => {
                sink.record(event)?;
                self.failures = 0;
                self.state = SessionState::Authenticated;
            }
            Outcome::Failure => {
                if attempted.required_method == AuthMethod::None {
                    return Err(Error::InvalidEvent("a login needing no credential cannot fail".into()));
                }
                self.failures += 1;
                let locked = self.failures >= self.request.max_failures;
                if locked || self.engine.config.failure_recording == FailureRecording::EveryFailure {
                    sink.record(event)?;
                }
                if locked {
                    self.state = SessionState::LockedOut;
                }
                let next = self.engine.decide(&self.base, self.failures, locked);
                self.decisions.push(next);
            }
        }
        Ok(self.current())
    }
}
