//! Trust decisions for service access.
//!
//! Services are ranked by sensitivity from pairwise importance judgements
//! ([`ahp`]). Each access request is then scored against customer-chosen
//! trust thresholds, shifted by the user's authentication history
//! ([`history`]) and decayed by failed attempts ([`trust`]), to decide
//! whether no credential, a PIN, or biometrics is required ([`decision`]).

pub mod ahp;
pub mod decision;
mod error;
pub mod history;
pub mod trust;

pub use ahp::{ComparisonMatrix, ConsistencyReport, ServiceCatalog, WeightVector};
pub use decision::{AccessRequest, AuthDecision, AuthSession, DecisionEngine, EngineConfig};
pub use error::{Error, Result};
pub use history::{AuthEvent, AuthHistoryStats, HistoryLog, Outcome};
pub use trust::{AdjustedThresholds, AuthMethod, Rank, TrustRank, TrustThresholds};
