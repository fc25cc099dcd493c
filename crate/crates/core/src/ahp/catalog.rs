//! Service sensitivity catalog built from accepted comparison matrices.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::consistency::{consistency_check, ConsistencyReport};
use super::matrix::{validate_matrix, ComparisonMatrix};
use super::weights::{lambda_max, weights, WeightVector};
use crate::error::{Error, Result};

/// Catalog values are weights printed to finite precision, so their sum is
/// checked loosely.
pub const CATALOG_SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub level: String,
    pub name: String,
    pub sensitive_value: f64,
}

/// Services ordered from most to least sensitive. Equal weights are
/// allowed and keep the order the services were given in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCatalog", into = "RawCatalog")]
pub struct ServiceCatalog {
    entries: Vec<CatalogEntry>,
}

#[derive(Serialize, Deserialize)]
struct RawCatalog {
    entries: Vec<CatalogEntry>,
}

impl TryFrom<RawCatalog> for ServiceCatalog {
    type Error = Error;

    fn try_from(raw: RawCatalog) -> Result<Self> {
        ServiceCatalog::new(raw.entries)
    }
}

impl From<ServiceCatalog> for RawCatalog {
    fn from(c: ServiceCatalog) -> Self {
        RawCatalog { entries: c.entries }
    }
}

/// Level label for the `rank`-th entry: A, B, C, ...
pub fn level_label(rank: usize) -> String {
    char::from(b'A' + rank as u8).to_string()
}

const BASELINE: [(&str, f64); 9] = [
    ("Governmental\\military", 0.309_416_16),
    ("Commercial", 0.224_423_46),
    ("Academic", 0.157_656_35),
    ("Banking\\Stock", 0.108_871_98),
    ("e-Shopping", 0.074_609_05),
    ("VoIP", 0.051_128_96),
    ("Education", 0.035_307_88),
    ("Entertainment", 0.024_803_61),
    ("Public", 0.013_782_56),
];

impl ServiceCatalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidCatalog("catalog has no entries".into()));
        }
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(e.level.as_str()) {
                return Err(Error::InvalidCatalog(format!("duplicate level {:?}", e.level)));
            }
            if !(e.sensitive_value > 0.0 && e.sensitive_value < 1.0)
                && !(entries.len() == 1 && e.sensitive_value == 1.0)
            {
                return Err(Error::InvalidCatalog(format!(
                    "level {} has sensitive value {} outside (0, 1)",
                    e.level, e.sensitive_value
                )));
            }
        }
        for pair in entries.windows(2) {
            if pair[0].sensitive_value < pair[1].sensitive_value {
                return Err(Error::InvalidCatalog(format!(
                    "levels {} and {} are not in descending order",
                    pair[0].level, pair[1].level
                )));
            }
        }
        let total: f64 = entries.iter().map(|e| e.sensitive_value).sum();
        if (total - 1.0).abs() > CATALOG_SUM_TOLERANCE {
            return Err(Error::InvalidCatalog(format!("sensitive values sum to {total}, not 1")));
        }
        Ok(Self { entries })
    }

    /// The nine-level estimation table for the reference service mix,
    /// from government/military down to public services.
    pub fn baseline() -> Self {
        let entries = BASELINE
            .iter()
            .enumerate()
            .map(|(k, (name, s))| CatalogEntry {
                level: level_label(k),
                name: (*name).to_string(),
                sensitive_value: *s,
            })
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, level: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.level == level)
    }

    pub fn max_value(&self) -> f64 {
        self.entries[0].sensitive_value
    }

    pub fn min_value(&self) -> f64 {
        self.entries[self.entries.len() - 1].sensitive_value
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Everything the classification pipeline computed for one matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub weights: WeightVector,
    pub report: ConsistencyReport,
    pub catalog: ServiceCatalog,
}

/// Runs validation, weighting and the consistency gate.
///
/// Returns the full pipeline output on acceptance and
/// [`Error::Inconsistent`] (carrying the report) on rejection.
pub fn analyze(m: &ComparisonMatrix, names: &[String]) -> Result<Classification> {
    if names.len() != m.order() {
        return Err(Error::LengthMismatch { expected: m.order(), found: names.len() });
    }
    validate_matrix(m).into_result()?;
    let w = weights(m)?;
    let report = consistency_check(lambda_max(m, &w)?, m.order())?;
    if !report.accepted {
        return Err(Error::Inconsistent(report));
    }

    let mut order: Vec<usize> = (0..m.order()).collect();
    // stable: ties keep input order
    order.sort_by(|&a, &b| w.weights[b].total_cmp(&w.weights[a]));
    let entries = order
        .iter()
        .enumerate()
        .map(|(rank, &i)| CatalogEntry {
            level: level_label(rank),
            name: names[i].clone(),
            sensitive_value: w.weights[i],
        })
        .collect();
    let catalog = ServiceCatalog::new(entries)?;
    Ok(Classification { weights: w, report, catalog })
}

pub fn classify(m: &ComparisonMatrix, names: &[String]) -> Result<ServiceCatalog> {
    analyze(m, names).map(|c| c.catalog)
}

/// Adds a new service to an accepted matrix and re-ranks everything.
///
/// `comparisons[j]` is the importance of the new service relative to
/// service `j`; the reciprocal column is derived.
pub fn insert_service(
    m: &ComparisonMatrix,
    names: &[String],
    new_name: &str,
    comparisons: &[f64],
) -> Result<(ComparisonMatrix, Classification)> {
    if names.len() != m.order() {
        return Err(Error::LengthMismatch { expected: m.order(), found: names.len() });
    }
    let expanded = m.expand(comparisons)?;
    let mut all_names = names.to_vec();
    all_names.push(new_name.to_string());
    let classification = analyze(&expanded, &all_names)?;
    Ok((expanded, classification))
}
