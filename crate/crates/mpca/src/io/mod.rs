//! File formats: CSV ingestion/emission and the structured report
//! document.

pub mod csv;
pub mod report;

pub use csv::{format_float, ingest_csv, ingest_csv_reader, write_matrix_csv, IngestedCsv};
pub use report::{from_text, table_to_csv, to_text, AnalysisReport, ClusterEntry, ScaleTable};
