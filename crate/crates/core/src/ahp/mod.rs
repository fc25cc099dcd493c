//! Pairwise-comparison service classification.
//!
//! A [`ComparisonMatrix`] of relative service importance is reduced to
//! priority weights by the geometric-mean (root) method, gated on its
//! consistency ratio, and turned into a [`ServiceCatalog`] of sensitivity
//! levels.

mod catalog;
mod consistency;
pub mod io;
mod matrix;
pub mod sample;
mod weights;

pub use catalog::{
    analyze, classify, insert_service, level_label, CatalogEntry, Classification, ServiceCatalog,
    CATALOG_SUM_TOLERANCE,
};
pub use consistency::{consistency_check, random_index, ConsistencyReport, CR_THRESHOLD, RANDOM_INDEX};
pub use matrix::{
    is_scale_value, validate_matrix, ComparisonMatrix, OffScaleEntry, ValidationReport, Violation, MAX_ORDER,
    RECIPROCITY_TOLERANCE,
};
pub use weights::{lambda_max, normalize_weights, row_geometric_means, weights, WeightVector};
