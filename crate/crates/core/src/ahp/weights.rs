//! Root (geometric-mean) approximation of the principal eigenvector.

use serde::{Deserialize, Serialize};

use super::matrix::ComparisonMatrix;
use crate::error::{Error, Result};

/// Normalized priority weights together with the row means they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub weights: Vec<f64>,
    pub raw_geometric_means: Vec<f64>,
}

impl WeightVector {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// n-th root of the product of each row.
///
/// Orders are capped at 15 with entries on the 1/9..9 scale, so the raw
/// product stays far from overflow.
pub fn row_geometric_means(m: &ComparisonMatrix) -> Vec<f64> {
    let inv_n = 1.0 / m.order() as f64;
    m.rows().map(|row| row.iter().product::<f64>().powf(inv_n)).collect()
}

/// Scales positive means so they sum to one.
pub fn normalize_weights(means: &[f64]) -> Result<WeightVector> {
    if means.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(&bad) = means.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
        return Err(Error::NonPositive(bad));
    }
    let total: f64 = means.iter().sum();
    Ok(WeightVector {
        weights: means.iter().map(|a| a / total).collect(),
        raw_geometric_means: means.to_vec(),
    })
}

/// Geometric-mean weights of a comparison matrix.
pub fn weights(m: &ComparisonMatrix) -> Result<WeightVector> {
    normalize_weights(&row_geometric_means(m))
}

/// `(1/n) * sum_i (A w)_i / w_i`.
pub fn lambda_max(m: &ComparisonMatrix, w: &WeightVector) -> Result<f64> {
    if w.len() != m.order() {
        return Err(Error::LengthMismatch { expected: m.order(), found: w.len() });
    }
    let aw = m.mul_vector(&w.weights);
    Ok(aw.iter().zip(&w.weights).map(|(x, wi)| x / wi).sum::<f64>() / m.order() as f64)
}
