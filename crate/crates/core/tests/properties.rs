use proptest::prelude::*;

use trustgate_core::ahp::{
    classify, consistency_check, insert_service, lambda_max, normalize_weights, validate_matrix, weights,
    ComparisonMatrix, ServiceCatalog,
};
use trustgate_core::decision::{sweep_penalty, SweepParams};
use trustgate_core::trust::{
    adjust_thresholds, apply_penalty, decide_rank, history_adjustment_a, history_adjustment_b,
    penalty_coefficient, trust_value, Rank, TrustThresholds,
};
use trustgate_core::AuthHistoryStats;

const SCALE: [f64; 17] = [
    1.0 / 9.0,
    1.0 / 8.0,
    1.0 / 7.0,
    1.0 / 6.0,
    1.0 / 5.0,
    1.0 / 4.0,
    1.0 / 3.0,
    1.0 / 2.0,
    1.0,
    2.0,
    3.0,
    4.0,
    5.0,
    6.0,
    7.0,
    8.0,
    9.0,
];

fn scale_matrix() -> impl Strategy<Value = ComparisonMatrix> {
    (2usize..=9).prop_flat_map(|n| {
        prop::collection::vec(prop::sample::select(SCALE.to_vec()), n * (n - 1) / 2).prop_map(move |flat| {
            let mut upper = Vec::with_capacity(n);
            let mut it = flat.into_iter();
            for i in 0..n {
                upper.push(it.by_ref().take(n - 1 - i).collect());
            }
            ComparisonMatrix::from_upper_triangle(n, &upper).unwrap()
        })
    })
}

fn thresholds() -> impl Strategy<Value = TrustThresholds> {
    (0.0f64..=0.5, 0.501f64..=1.0).prop_map(|(l, u)| TrustThresholds::new(l, u).unwrap())
}

fn stats(t1: f64, t2: f64) -> AuthHistoryStats {
    AuthHistoryStats { t1, t2: Some(t2), t3: None, total_events: 1, pin_attempts: 1 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalized_weights_sum_to_one(means in prop::collection::vec(1e-6f64..1e6, 1..20)) {
        let w = normalize_weights(&means).unwrap();
        prop_assert!((w.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalization_is_scale_invariant(
        means in prop::collection::vec(1e-3f64..1e3, 1..15),
        k in 1e-3f64..1e3,
    ) {
        let a = normalize_weights(&means).unwrap();
        let scaled: Vec<f64> = means.iter().map(|m| m * k).collect();
        let b = normalize_weights(&scaled).unwrap();
        for (x, y) in a.weights.iter().zip(&b.weights) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn consistent_matrix_recovers_weights(w in prop::collection::vec(0.01f64..10.0, 1..=9)) {
        let m = ComparisonMatrix::from_weights(&w).unwrap();
        let got = weights(&m).unwrap();
        let total: f64 = w.iter().sum();
        for (g, x) in got.weights.iter().zip(&w) {
            prop_assert!((g - x / total).abs() < 1e-9);
        }
        let lambda = lambda_max(&m, &got).unwrap();
        prop_assert!((lambda - w.len() as f64).abs() < 1e-9);
        let report = consistency_check(lambda.max(w.len() as f64), w.len()).unwrap();
        prop_assert!(report.cr.abs() < 1e-9);
    }

    #[test]
    fn lambda_at_least_order(m in scale_matrix()) {
        prop_assert!(validate_matrix(&m).is_valid());
        let w = weights(&m).unwrap();
        prop_assert!((w.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(w.weights.iter().all(|x| *x > 0.0));
        let lambda = lambda_max(&m, &w).unwrap();
        prop_assert!(lambda >= m.order() as f64 - 1e-9);
    }

    #[test]
    fn insertion_preserves_reciprocity(
        w in prop::collection::vec(0.1f64..10.0, 2..=8),
        row in prop::collection::vec(prop::sample::select(SCALE.to_vec()), 8),
    ) {
        let m = ComparisonMatrix::from_weights(&w).unwrap();
        let names: Vec<String> = (0..w.len()).map(|k| format!("s{k}")).collect();
        let row = &row[..w.len()];
        let expanded = m.expand(row).unwrap();
        prop_assert!(validate_matrix(&expanded).is_valid());
        // the pipeline either accepts or rejects on consistency, never on structure
        match insert_service(&m, &names, "new", row) {
            Ok((mm, c)) => {
                prop_assert_eq!(mm, expanded);
                prop_assert_eq!(c.catalog.len(), w.len() + 1);
            }
            Err(trustgate_core::Error::Inconsistent(r)) => prop_assert!(r.cr >= 0.1),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn classify_orders_descending(m in scale_matrix()) {
        let names: Vec<String> = (0..m.order()).map(|k| format!("s{k}")).collect();
        if let Ok(c) = classify(&m, &names) {
            for pair in c.entries().windows(2) {
                prop_assert!(pair[0].sensitive_value >= pair[1].sensitive_value);
            }
        }
    }

    #[test]
    fn threshold_ordering(t in thresholds(), t1 in 0.0f64..=1.0, t2 in 0.0f64..=1.0) {
        let adj = adjust_thresholds(&t, Some(&stats(t1, t2))).unwrap();
        prop_assert!(adj.lower >= 0.0);
        prop_assert!(adj.lower <= t.upper() + 1e-15);
        prop_assert!(t.upper() <= adj.upper);
        if t.upper() < 1.0 {
            prop_assert!(adj.upper < 1.0);
        }
        let bmax = (std::f64::consts::E - 1.0) / (std::f64::consts::E + 1.0) * (1.0 - t.upper());
        prop_assert!(adj.upper_shift <= bmax + 1e-15);
    }

    #[test]
    fn history_shifts_are_monotone(t in thresholds(), x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        prop_assert!(history_adjustment_a(hi, &t).unwrap() <= history_adjustment_a(lo, &t).unwrap());
        prop_assert!(history_adjustment_b(hi, &t).unwrap() <= history_adjustment_b(lo, &t).unwrap());
    }

    #[test]
    fn trust_is_non_increasing_in_sensitivity(t in thresholds(), u in 0.0f64..=1.0, v in 0.0f64..=1.0) {
        let c = ServiceCatalog::baseline();
        let span = c.max_value() - c.min_value();
        let (sa, sb) = (c.min_value() + u.min(v) * span, c.min_value() + u.max(v) * span);
        let ya = trust_value(sa, &t, &c).unwrap();
        let yb = trust_value(sb, &t, &c).unwrap();
        prop_assert!(ya.y >= yb.y);
        prop_assert!(ya.y_star >= yb.y_star);
    }

    #[test]
    fn penalty_pins_upper_to_lower(lower in 0.01f64..=0.5, upper in 0.501f64..=1.0, n in 1u32..=20) {
        let t = TrustThresholds::new(lower, upper).unwrap();
        let p = penalty_coefficient(&t, n).unwrap();
        prop_assert!(p > 0.0 && p < 1.0);
        prop_assert!((apply_penalty(upper, p, n) - lower).abs() < 1e-9);
    }

    #[test]
    fn penalty_never_promotes(t in thresholds(), y in 0.0f64..=1.0, t1 in 0.0f64..=1.0, t2 in 0.0f64..=1.0) {
        prop_assume!(t.lower() > 0.0);
        let adj = adjust_thresholds(&t, Some(&stats(t1, t2))).unwrap();
        let p = penalty_coefficient(&t, 5).unwrap();
        let mut prev = decide_rank(y, &adj).rank;
        for n in 1..=8 {
            let ye = apply_penalty(y, p, n);
            if y > 0.0 {
                prop_assert!(ye < apply_penalty(y, p, n - 1));
            }
            let rank = decide_rank(ye, &adj).rank;
            prop_assert!(rank <= prev);
            prev = rank;
        }
    }

    #[test]
    fn regions_partition_unit_interval(t in thresholds(), t1 in 0.0f64..=1.0, t2 in 0.0f64..=1.0, y in 0.0f64..=1.0) {
        let adj = adjust_thresholds(&t, Some(&stats(t1, t2))).unwrap();
        let rank = decide_rank(y, &adj).rank;
        let expected = if y < adj.lower { Rank::Low } else if y < adj.upper { Rank::Medium } else { Rank::High };
        prop_assert_eq!(rank, expected);
    }

    #[test]
    fn operations_are_deterministic(t in thresholds(), u in 0.0f64..=1.0) {
        let c = ServiceCatalog::baseline();
        let s = c.min_value() + u * (c.max_value() - c.min_value());
        let a = trust_value(s, &t, &c).unwrap();
        let b = trust_value(s, &t, &c).unwrap();
        prop_assert_eq!(a.y.to_bits(), b.y.to_bits());
    }
}

#[test]
fn penalty_sweep_is_deterministic() {
    let params = SweepParams::default().with_history(0.4, 0.9);
    let a = sweep_penalty(&ServiceCatalog::baseline(), &params).unwrap();
    let b = sweep_penalty(&ServiceCatalog::baseline(), &params).unwrap();
    assert_eq!(a, b);
}
