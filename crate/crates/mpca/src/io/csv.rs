//! Numeric CSV ingestion with positioned parse errors, and CSV emission
//! for generated datasets and report tables.

use std::io::Read;
use std::path::Path;

use nalgebra::DMatrix;

use crate::core::dataset::{center, normalize, Dataset, NormalizeMode};
use crate::error::{Error, Result};

/// A parsed CSV: the normalized, centered dataset plus any header names.
#[derive(Debug, Clone)]
pub struct IngestedCsv {
    pub dataset: Dataset,
    pub column_names: Option<Vec<String>>,
}

/// Reads a rectangular numeric CSV into a centered dataset.
pub fn ingest_csv(
    path: &Path,
    has_header: bool,
    normalization: NormalizeMode,
) -> Result<IngestedCsv> {
    let file = std::fs::File::open(path)?;
    ingest_csv_reader(file, has_header, normalization)
}

/// Reader-based ingestion, used directly by tests and fuzz targets.
pub fn ingest_csv_reader<R: Read>(
    reader: R,
    has_header: bool,
    normalization: NormalizeMode,
) -> Result<IngestedCsv> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut column_names = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;

    for (idx, record) in csv_reader.records().enumerate() {
        let row_number = idx + 1;
        let record = record.map_err(|e| Error::Parse {
            row: row_number,
            column: 1,
            message: e.to_string(),
        })?;
        if idx == 0 && has_header {
            column_names = Some(record.iter().map(|s| s.to_string()).collect());
            continue;
        }
        // skip completely blank trailing lines
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::Parse {
                row: row_number,
                column: record.len(),
                message: format!("ragged row: expected {expected} fields, got {}", record.len()),
            });
        }
        let mut row = Vec::with_capacity(expected);
        for (col, field) in record.iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                row: row_number,
                column: col + 1,
                message: format!("non-numeric cell '{field}'"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: row_number,
                    column: col + 1,
                    message: format!("non-finite cell '{field}'"),
                });
            }
            row.push(value);
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(Error::Parse {
            row: 1,
            column: 1,
            message: "empty file".into(),
        });
    }
    let n = rows.len();
    let m = rows[0].len();
    if m > 64 {
        return Err(Error::InvalidInput(format!(
            "at most 64 columns supported, got {m}"
        )));
    }
    let raw = DMatrix::from_fn(n, m, |i, j| rows[i][j]);
    let normalized = normalize(&raw, normalization)?;
    let dataset = center(&normalized)?;
    Ok(IngestedCsv {
        dataset,
        column_names,
    })
}

/// Writes a matrix as plain CSV with 17 significant digits per value.
pub fn write_matrix_csv<W: std::io::Write>(writer: &mut W, matrix: &DMatrix<f64>) -> Result<()> {
    for i in 0..matrix.nrows() {
        let row: Vec<String> = (0..matrix.ncols())
            .map(|j| format_float(matrix[(i, j)]))
            .collect();
        writeln!(writer, "{}", row.join(","))?;
    }
    Ok(())
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}
