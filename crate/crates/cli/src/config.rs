//! Optional TOML configuration. Every field can be overridden by a flag.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;
use trustgate_core::decision::AnomalyMode;
use trustgate_core::history::AnomalyConfig;
use trustgate_core::TrustThresholds;

pub const DEFAULT_LOWER: f64 = 0.3;
pub const DEFAULT_UPPER: f64 = 0.7;
pub const DEFAULT_MAX_FAILURES: u32 = 5;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliConfig {
    pub catalog_path: Option<PathBuf>,
    pub history_path: Option<PathBuf>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub n_max: Option<u32>,
    pub anomaly_mode: Option<AnomalyMode>,
    #[serde(default)]
    pub anomaly: AnomalySection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnomalySection {
    pub recent_window: Option<usize>,
    pub good_record: Option<f64>,
    pub drop: Option<f64>,
    pub min_events: Option<usize>,
}

impl CliConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let config: Self =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        if config.lower.is_some() || config.upper.is_some() {
            config.thresholds(None, None)?;
        }
        Ok(config)
    }

    pub fn thresholds(&self, lower: Option<f64>, upper: Option<f64>) -> Result<TrustThresholds> {
        let lower = lower.or(self.lower).unwrap_or(DEFAULT_LOWER);
        let upper = upper.or(self.upper).unwrap_or(DEFAULT_UPPER);
        Ok(TrustThresholds::new(lower, upper)?)
    }

    pub fn max_failures(&self, flag: Option<u32>) -> u32 {
        flag.or(self.n_max).unwrap_or(DEFAULT_MAX_FAILURES)
    }

    pub fn anomaly(&self, flags: &AnomalySection) -> AnomalyConfig {
        let d = AnomalyConfig::default();
        let file = &self.anomaly;
        AnomalyConfig {
            recent_window: flags.recent_window.or(file.recent_window).unwrap_or(d.recent_window),
            good_record: flags.good_record.or(file.good_record).unwrap_or(d.good_record),
            drop: flags.drop.or(file.drop).unwrap_or(d.drop),
            min_events: flags.min_events.or(file.min_events).unwrap_or(d.min_events),
        }
    }
}
