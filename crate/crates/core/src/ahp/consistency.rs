//! Consistency index, random index and the CR < 0.1 acceptance gate.

use serde::{Deserialize, Serialize};

use super::matrix::MAX_ORDER;
use crate::error::{Error, Result};

/// Average random consistency index for orders 1 through 15.
pub const RANDOM_INDEX: [f64; MAX_ORDER] =
    [0.0, 0.0, 0.52, 0.89, 1.12, 1.26, 1.36, 1.41, 1.46, 1.49, 1.52, 1.54, 1.56, 1.58, 1.59];

/// Matrices with CR strictly below this are accepted.
pub const CR_THRESHOLD: f64 = 0.1;

const LAMBDA_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub order: usize,
    pub lambda_max: f64,
    pub ci: f64,
    pub ri: f64,
    pub cr: f64,
    pub accepted: bool,
}

pub fn random_index(order: usize) -> Result<f64> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::OrderOutOfRange(order));
    }
    Ok(RANDOM_INDEX[order - 1])
}

/// Builds the consistency report for an approximate principal eigenvalue.
///
/// Orders 1 and 2 have RI = 0; their CR is defined as 0 and they are
/// always accepted.
pub fn consistency_check(lambda_max: f64, order: usize) -> Result<ConsistencyReport> {
    let ri = random_index(order)?;
    let n = order as f64;
    if !lambda_max.is_finite() || lambda_max < n - LAMBDA_SLACK {
        return Err(Error::InvalidMatrix(format!(
            "lambda_max {lambda_max} is below the matrix order {order}"
        )));
    }
    let ci = if order == 1 { 0.0 } else { (lambda_max - n) / (n - 1.0) };
    let cr = if ri == 0.0 { 0.0 } else { ci / ri };
    Ok(ConsistencyReport { order, lambda_max, ci, ri, cr, accepted: cr < CR_THRESHOLD })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_lambda_gives_printed_ci_and_cr() {
        let r = consistency_check(9.218_589_9, 9).unwrap();
        assert!((r.ci - 0.027_323_7).abs() < 1e-6);
        assert!((r.cr - 0.018_714_9).abs() < 1e-6);
        assert_eq!(r.ri, 1.46);
        assert!(r.accepted);
    }

    #[test]
    fn perfectly_consistent() {
        for n in 1..=15 {
            let r = consistency_check(n as f64, n).unwrap();
            assert_eq!((r.ci, r.cr), (0.0, 0.0));
            assert!(r.accepted);
        }
    }

    #[test]
    fn boundary_is_strict() {
        // CI = 0.104 / 2 = 0.052, RI(3) = 0.52, CR = 0.1
        let r = consistency_check(3.104, 3).unwrap();
        assert!((r.ci - 0.052).abs() < 1e-12);
        assert!((r.cr - 0.1).abs() < 1e-12);
        assert!(!r.accepted);
    }

    #[test]
    fn small_orders_always_accepted() {
        let r = consistency_check(2.5, 2).unwrap();
        assert_eq!(r.cr, 0.0);
        assert!(r.accepted);
    }

    #[test]
    fn out_of_table_rejected() {
        assert_eq!(consistency_check(16.0, 16).unwrap_err(), Error::OrderOutOfRange(16));
        assert_eq!(consistency_check(0.0, 0).unwrap_err(), Error::OrderOutOfRange(0));
        assert!(consistency_check(2.0, 3).is_err());
    }
}
