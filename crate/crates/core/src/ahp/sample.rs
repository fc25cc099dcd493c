//! The nine-level reference service mix.
//!
//! Services are listed from most to least important; service `i` is
//! `j - i + 1` times as important as service `j` for `j >= i`.

use super::matrix::ComparisonMatrix;

pub const NINE_LEVEL_NAMES: [&str; 9] = [
    "Governmental\\military",
    "Commercial",
    "Academic",
    "Banking\\Stock",
    "e-Shopping",
    "VoIP",
    "Education",
    "Entertainment",
    "Public",
];

pub fn nine_level_names() -> Vec<String> {
    NINE_LEVEL_NAMES.iter().map(|s| s.to_string()).collect()
}

pub fn nine_level_matrix() -> ComparisonMatrix {
    let rows = (0..9)
        .map(|i| (0..9).map(|j| if j >= i { (j - i + 1) as f64 } else { 1.0 / (i - j + 1) as f64 }).collect())
        .collect();
    ComparisonMatrix::from_rows(rows).expect("square by construction")
}

/// The same matrix as CSV with a header row, fractions written as `1/k`.
pub fn nine_level_csv() -> String {
    let mut out = NINE_LEVEL_NAMES.join(",");
    out.push('\n');
    for i in 0..9usize {
        let cells: Vec<String> = (0..9usize)
            .map(|j| if j >= i { (j - i + 1).to_string() } else { format!("1/{}", i - j + 1) })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
