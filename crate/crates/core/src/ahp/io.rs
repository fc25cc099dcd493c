//! Comparison-matrix file formats.
//!
//! Two layouts are accepted:
//!
//! - CSV: `n` rows of `n` cells, each a decimal or a fraction such as `1/3`,
//!   optionally preceded by a header row of service names.
//! - JSON: `{"names": [...], "upper": [[a12, a13, ...], [a23, ...], ...]}`
//!   holding only the strict upper triangle; cells may be numbers or
//!   fraction strings.

use serde::{Deserialize, Serialize};

use super::matrix::ComparisonMatrix;
use crate::error::{Error, Result};

/// A parsed matrix plus service names, if the file carried any.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub matrix: ComparisonMatrix,
    pub names: Option<Vec<String>>,
}

/// Parses `"3"`, `"0.25"` or `"1/3"`.
pub fn parse_value(cell: &str) -> Result<f64> {
    let cell = cell.trim();
    let value = match cell.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad_cell(cell))?;
            let den: f64 = den.trim().parse().map_err(|_| bad_cell(cell))?;
            if den == 0.0 {
                return Err(bad_cell(cell));
            }
            num / den
        }
        None => cell.parse().map_err(|_| bad_cell(cell))?,
    };
    if !value.is_finite() {
        return Err(bad_cell(cell));
    }
    Ok(value)
}

fn bad_cell(cell: &str) -> Error {
    Error::Parse(format!("cannot read {cell:?} as a comparison value"))
}

pub fn parse_csv(text: &str) -> Result<MatrixFile> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());

    let mut records = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        records.push(record.iter().map(str::to_string).collect::<Vec<_>>());
    }
    if records.is_empty() {
        return Err(Error::Parse("matrix file is empty".into()));
    }

    let names =
        if records[0].iter().any(|c| parse_value(c).is_err()) { Some(records.remove(0)) } else { None };

    let rows = records
        .iter()
        .map(|r| r.iter().map(|c| parse_value(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let matrix = ComparisonMatrix::from_rows(rows)?;
    if let Some(names) = &names {
        if names.len() != matrix.order() {
            return Err(Error::LengthMismatch { expected: matrix.order(), found: names.len() });
        }
    }
    Ok(MatrixFile { matrix, names })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Cell {
    Number(f64),
    Text(String),
}

impl Cell {
    fn value(&self) -> Result<f64> {
        match self {
            Cell::Number(v) => Ok(*v),
            Cell::Text(s) => parse_value(s),
        }
    }
}

#[derive(Debug, Deserialize)]
struct UpperTriangleDoc {
    names: Vec<String>,
    upper: Vec<Vec<Cell>>,
}

pub fn parse_upper_triangle_json(text: &str) -> Result<MatrixFile> {
    let doc: UpperTriangleDoc = serde_json::from_str(text)?;
    let upper = doc
        .upper
        .iter()
        .map(|row| row.iter().map(Cell::value).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let matrix = ComparisonMatrix::from_upper_triangle(doc.names.len(), &upper)?;
    Ok(MatrixFile { matrix, names: Some(doc.names) })
}

/// Picks the JSON layout when the text starts with `{`, CSV otherwise.
pub fn parse_matrix(text: &str) -> Result<MatrixFile> {
    if text.trim_start().starts_with('{') {
        parse_upper_triangle_json(text)
    } else {
        parse_csv(text)
    }
}
