//! Append-only authentication history and the statistics derived from it.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Arc, RwLock};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::trust::{AuthMethod, Rank};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Success,
    Failure,
}

impl std::str::FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "success" => Ok(Outcome::Success),
            "failure" => Ok(Outcome::Failure),
            _ => Err(Error::Parse(format!("unknown outcome {s:?}"))),
        }
    }
}

/// One authentication attempt.
///
/// Serialized as a JSON object with keys `ts`, `user`, `level`, `rank`,
/// `method` and `outcome`. Any other keys found on read are kept in
/// `extra` and written back unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthEvent {
    pub ts: DateTime<Utc>,
    pub user: String,
    pub level: String,
    pub rank: Rank,
    pub method: AuthMethod,
    pub outcome: Outcome,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl AuthEvent {
    /// An event whose method is the one its rank requires.
    pub fn new(
        ts: DateTime<Utc>,
        user: impl Into<String>,
        level: impl Into<String>,
        rank: Rank,
        outcome: Outcome,
    ) -> Self {
        Self {
            ts,
            user: user.into(),
            level: level.into(),
            rank,
            method: rank.required_method(),
            outcome,
            extra: Map::new(),
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.method != self.rank.required_method() {
            return Err(Error::InvalidEvent(format!(
                "rank {} requires {}, event used {}",
                self.rank,
                self.rank.required_method(),
                self.method
            )));
        }
        if self.method == AuthMethod::None && self.outcome == Outcome::Failure {
            return Err(Error::InvalidEvent("a login needing no credential cannot fail".into()));
        }
        Ok(())
    }
}

/// Ratios over a user's events. A ratio whose denominator is zero is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuthHistoryStats {
    /// High-rank logins over all events.
    pub t1: f64,
    /// PIN successes over PIN attempts.
    pub t2: Option<f64>,
    /// Biometric successes over biometric attempts. Recorded, never used
    /// for threshold adjustment.
    pub t3: Option<f64>,
    pub total_events: usize,
    pub pin_attempts: usize,
}

impl AuthHistoryStats {
    /// Stats over a sequence of one user's events; `None` when empty.
    pub fn from_events<'a>(events: impl IntoIterator<Item = &'a AuthEvent>) -> Option<Self> {
        let (mut total, mut high) = (0usize, 0usize);
        let (mut pin, mut pin_ok) = (0usize, 0usize);
        let (mut bio, mut bio_ok) = (0usize, 0usize);
        for e in events {
            total += 1;
            let ok = e.outcome == Outcome::Success;
            match e.method {
                AuthMethod::None => high += 1,
                AuthMethod::Pin => {
                    pin += 1;
                    pin_ok += ok as usize;
                }
                AuthMethod::Biometric => {
                    bio += 1;
                    bio_ok += ok as usize;
                }
            }
        }
        if total == 0 {
            return None;
        }
        let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
        Some(Self {
            t1: high as f64 / total as f64,
            t2: ratio(pin_ok, pin),
            t3: ratio(bio_ok, bio),
            total_events: total,
            pin_attempts: pin,
        })
    }
}

/// Configuration for the "good record turned bad" signal.
///
/// None of these constants come from a calibrated model; they are defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnomalyConfig {
    /// Number of most recent PIN events forming the recent window.
    pub recent_window: usize,
    /// Older-window PIN success ratio that counts as a good record.
    pub good_record: f64,
    /// Drop in PIN success ratio, older minus recent, that must be exceeded.
    pub drop: f64,
    /// Both windows need at least this many PIN events.
    pub min_events: usize,
}

impl Default for AnomalyConfig {
    fn default() -> Self {
        Self { recent_window: 10, good_record: 0.8, drop: 0.3, min_events: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnomalyReport {
    pub flagged: bool,
    pub explanation: String,
    pub older_t2: Option<f64>,
    pub recent_t2: Option<f64>,
    pub older_events: usize,
    pub recent_events: usize,
}

/// In-memory append-only event log, ordered by append sequence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HistoryLog {
    events: Vec<AuthEvent>,
}

impl HistoryLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a validated event. Earlier events are never touched.
    pub fn record_event(&mut self, event: AuthEvent) -> Result<()> {
        event.check()?;
        self.events.push(event);
        Ok(())
    }

    pub fn events(&self) -> &[AuthEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn user_events<'a>(&'a self, user: &'a str) -> impl DoubleEndedIterator<Item = &'a AuthEvent> + 'a {
        self.events.iter().filter(move |e| e.user == user)
    }

    /// Stats over the user's `window` most recent events, or all of them.
    pub fn compute_stats(&self, user: &str, window: Option<usize>) -> Option<AuthHistoryStats> {
        let events: Vec<&AuthEvent> = self.user_events(user).collect();
        let start = window.map_or(0, |w| events.len().saturating_sub(w));
        AuthHistoryStats::from_events(events[start..].iter().copied())
    }

    /// Flags a user whose PIN record was good and has recently turned bad.
    pub fn detect_anomaly(&self, user: &str, config: &AnomalyConfig) -> AnomalyReport {
        let pins: Vec<bool> = self
            .user_events(user)
            .filter(|e| e.method == AuthMethod::Pin)
            .map(|e| e.outcome == Outcome::Success)
            .collect();
        let split = pins.len().saturating_sub(config.recent_window);
        let (older, recent) = pins.split_at(split);
        let ratio =
            |w: &[bool]| (!w.is_empty()).then(|| w.iter().filter(|ok| **ok).count() as f64 / w.len() as f64);
        let (older_t2, recent_t2) = (ratio(older), ratio(recent));
        let mut report = AnomalyReport {
            flagged: false,
            explanation: String::new(),
            older_t2,
            recent_t2,
            older_events: older.len(),
            recent_events: recent.len(),
        };

        if older.len() < config.min_events || recent.len() < config.min_events {
            report.explanation = format!(
                "insufficient PIN history: {} older and {} recent events, need {} in each",
                older.len(),
                recent.len(),
                config.min_events
            );
            return report;
        }
        let (old, new) = (older_t2.unwrap_or(0.0), recent_t2.unwrap_or(0.0));
        if old < config.good_record {
            report.explanation = format!(
                "older PIN success ratio {old:.6} is below the good-record level {:.6}",
                config.good_record
            );
        } else if old - new > config.drop {
            report.flagged = true;
            report.explanation = format!(
                "PIN success ratio fell from {old:.6} to {new:.6}, a drop above {:.6}; identity may be compromised",
                config.drop
            );
        } else {
            report.explanation = format!("PIN success ratio {old:.6} -> {new:.6} is within tolerance");
        }
        report
    }

    /// Reads a JSONL log; blank lines are skipped and every event is
    /// validated as if it were being recorded.
    pub fn read_jsonl(reader: impl BufRead) -> Result<Self> {
        let mut log = Self::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let event: AuthEvent =
                serde_json::from_str(&line).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            log.record_event(event)?;
        }
        Ok(log)
    }

    /// Loads a log file; a missing file is an empty log.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        match File::open(path) {
            Ok(f) => Self::read_jsonl(BufReader::new(f)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(e.into()),
        }
    }

    pub fn write_jsonl(&self, mut out: impl Write) -> Result<()> {
        for e in &self.events {
            serde_json::to_writer(&mut out, e)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Appends events to a JSONL file, one object per line.
pub fn append_jsonl(path: impl AsRef<Path>, event: &AuthEvent) -> Result<()> {
    event.check()?;
    let mut line = serde_json::to_string(event)?;
    line.push('\n');
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    file.write_all(line.as_bytes())?;
    Ok(())
}

/// A log shared between one writer and any number of readers.
///
/// Readers take snapshots, each of which is a consistent prefix of the log.
#[derive(Debug, Clone, Default)]
pub struct SharedHistory {
    inner: Arc<RwLock<HistoryLog>>,
}

impl SharedHistory {
    pub fn new(log: HistoryLog) -> Self {
        Self { inner: Arc::new(RwLock::new(log)) }
    }

    pub fn record_event(&self, event: AuthEvent) -> Result<()> {
        self.inner.write().expect("history lock poisoned").record_event(event)
    }

    pub fn snapshot(&self) -> HistoryLog {
        self.inner.read().expect("history lock poisoned").clone()
    }
}
