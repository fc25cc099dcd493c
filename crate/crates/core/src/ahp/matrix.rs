//! Pairwise comparison matrices and their structural validation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest matrix order covered by the random-index table.
pub const MAX_ORDER: usize = 15;

/// Relative tolerance for `a_ij * a_ji = 1`.
pub const RECIPROCITY_TOLERANCE: f64 = 1e-9;

/// Positive reciprocal matrix of relative service importance.
///
/// `get(i, j)` is the importance of service `i` relative to service `j`.
/// Entries are stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl ComparisonMatrix {
    /// Builds a matrix from rows without checking the reciprocal invariants.
    ///
    /// Only squareness is enforced; run [`validate_matrix`] to find the rest.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != order {
                return Err(Error::NotSquare { row, found: values.len(), expected: order });
            }
            entries.extend(values);
        }
        Ok(Self { order, entries })
    }

    /// Builds a full matrix and rejects it unless it passes [`validate_matrix`].
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = Self::from_rows(rows)?;
        m.validate().into_result()?;
        Ok(m)
    }

    /// Completes a matrix from its strict upper triangle.
    ///
    /// `upper[i]` holds `a_{i,i+1} .. a_{i,n-1}`, so it has `n - 1 - i`
    /// entries; the final (empty) row may be omitted.
    pub fn from_upper_triangle(order: usize, upper: &[Vec<f64>]) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::OrderOutOfRange(order));
        }
        let mut entries = vec![1.0; order * order];
        for i in 0..order {
            let row: &[f64] = upper.get(i).map(Vec::as_slice).unwrap_or(&[]);
            let expected = order - 1 - i;
            if row.len() != expected {
                return Err(Error::LengthMismatch { expected, found: row.len() });
            }
            for (k, &value) in row.iter().enumerate() {
                if !(value > 0.0) || !value.is_finite() {
                    return Err(Error::NonPositive(value));
                }
                let j = i + 1 + k;
                entries[i * order + j] = value;
                entries[j * order + i] = 1.0 / value;
            }
        }
        if upper.len() > order {
            return Err(Error::LengthMismatch { expected: order, found: upper.len() });
        }
        Ok(Self { order, entries })
    }

    /// The perfectly consistent matrix `a_ij = w_i / w_j`.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(&bad) = weights.iter().find(|w| !(**w > 0.0)) {
            return Err(Error::NonPositive(bad));
        }
        let order = weights.len();
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(if i == j { 1.0 } else { weights[i] / weights[j] });
            }
        }
        Ok(Self { order, entries })
    }

    /// Every service equally important: all entries 1.
    pub fn uniform(order: usize) -> Self {
        Self { order, entries: vec![1.0; order * order] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.order.max(1))
    }

    /// `A * w` for a vector of matching length.
    pub fn mul_vector(&self, w: &[f64]) -> Vec<f64> {
        self.rows().map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum()).collect()
    }

    /// Appends a new service whose comparisons against the existing ones are
    /// `comparisons[j] = f(new, X_j)`. The reciprocal column is filled in.
    pub fn expand(&self, comparisons: &[f64]) -> Result<Self> {
        if comparisons.len() != self.order {
            return Err(Error::LengthMismatch { expected: self.order, found: comparisons.len() });
        }
        if let Some(&bad) = comparisons.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
            return Err(Error::NonPositive(bad));
        }
        let order = self.order + 1;
        if order > MAX_ORDER {
            return Err(Error::OrderOutOfRange(order));
        }
        let mut entries = Vec::with_capacity(order * order);
        for (i, row) in self.rows().enumerate() {
            entries.extend_from_slice(row);
            entries.push(1.0 / comparisons[i]);
        }
        entries.extend_from_slice(comparisons);
        entries.push(1.0);
        Ok(Self { order, entries })
    }

    pub fn validate(&self) -> ValidationReport {
        validate_matrix(self)
    }
}

impl fmt::Display for ComparisonMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A fatal structural problem found by [`validate_matrix`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    OrderOutOfRange(usize),
    NonPositiveEntry { row: usize, col: usize, value: f64 },
    NonUnitDiagonal { index: usize, value: f64 },
    Reciprocity { row: usize, col: usize, product: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OrderOutOfRange(n) => write!(f, "order {n} outside 1..={MAX_ORDER}"),
            Violation::NonPositiveEntry { row, col, value } => {
                write!(f, "entry ({}, {}) = {value} is not positive", row + 1, col + 1)
            }
            Violation::NonUnitDiagonal { index, value } => {
                write!(f, "diagonal entry ({0}, {0}) = {value}, expected 1", index + 1)
            }
            Violation::Reciprocity { row, col, product } => {
                write!(f, "reciprocity broken at ({}, {}): a_ij * a_ji = {product}", row + 1, col + 1)
            }
        }
    }
}

/// Non-fatal observation: an entry that is not on the 1..9 scale or its reciprocals.
#[derive(Debug, Clone, PartialEq)]
pub struct OffScaleEntry {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<OffScaleEntry>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        if self.is_valid() {
            Ok(self)
        } else {
            let msg: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
            Err(Error::InvalidMatrix(msg.join("; ")))
        }
    }
}

/// True when `value` is one of 1/9, .., 1/2, 1, 2, .., 9 (to 1e-9 relative).
pub fn is_scale_value(value: f64) -> bool {
    (1..=9).any(|k| {
        let k = k as f64;
        relative_eq(value, k) || relative_eq(value, 1.0 / k)
    })
}

fn relative_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= RECIPROCITY_TOLERANCE * b.abs().max(1.0)
}

/// Checks every structural invariant of a comparison matrix.
///
/// Non-positive entries, a broken diagonal, broken reciprocity and an order
/// outside the random-index table are violations. Entries off the 1..9 scale
/// are reported as warnings only.
pub fn validate_matrix(m: &ComparisonMatrix) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = m.order();
    if n == 0 || n > MAX_ORDER {
        report.violations.push(Violation::OrderOutOfRange(n));
    }
    for i in 0..n {
        for j in 0..n {
            let value = m.get(i, j);
            if !(value > 0.0) || !value.is_finite() {
                report.violations.push(Violation::NonPositiveEntry { row: i, col: j, value });
                continue;
            }
            if i == j {
                if value != 1.0 {
                    report.violations.push(Violation::NonUnitDiagonal { index: i, value });
                }
                continue;
            }
            if !is_scale_value(value) {
                report.warnings.push(OffScaleEntry { row: i, col: j, value });
            }
            if i < j {
                let back = m.get(j, i);
                if back > 0.0 {
                    let product = value * back;
                    if (product - 1.0).abs() > RECIPROCITY_TOLERANCE {
                        report.violations.push(Violation::Reciprocity { row: i, col: j, product });
                    }
                }
            }
        }
    }
    report
}
