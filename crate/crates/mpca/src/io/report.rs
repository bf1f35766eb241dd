//! The structured report document emitted by every CLI command.
//!
//! A report is a plain-text document of named sections. Floats carry 17
//! significant digits so the document round-trips losslessly; empty scale
//! cells are written as the literal `empty`, never as a number or NaN.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::io::csv::format_float;

const HEADER: &str = "mpca-report v1";

/// One cluster of the scale plane as reported by `cluster`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterEntry {
    pub label: usize,
    /// Medoid interval (standard scale).
    pub medoid: (f64, f64),
    /// Member intervals (standard scale).
    pub members: Vec<(f64, f64)>,
    /// Eigenvectors of the medoid projector, one row per vector.
    pub eigenvectors: Vec<Vec<f64>>,
}

/// A per-scale-point table (angles, distortion ratios, exempted percent).
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleTable {
    pub name: String,
    /// (l, u, value); `None` marks an empty scale.
    pub rows: Vec<(f64, f64, Option<f64>)>,
}

/// The complete payload of a command run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AnalysisReport {
    pub metadata: Vec<(String, String)>,
    pub eigenvalues: Option<Vec<f64>>,
    /// One row per eigenvector.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub projections: Option<Vec<Vec<f64>>>,
    pub clusters: Option<Vec<ClusterEntry>>,
    pub pseudo_t2_trace: Option<Vec<f64>>,
    pub tables: Vec<ScaleTable>,
}

impl AnalysisReport {
    pub fn push_meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn write_float_rows(out: &mut String, rows: &[Vec<f64>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format_float(*v)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
}

/// Serializes a report into the structured text document.
pub fn to_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out);
    let _ = writeln!(out, "[metadata]");
    for (k, v) in &report.metadata {
        let _ = writeln!(out, "{k} = {v}");
    }
    if let Some(values) = &report.eigenvalues {
        let _ = writeln!(out, "\n[eigenvalues]");
        for v in values {
            let _ = writeln!(out, "{}", format_float(*v));
        }
    }
    if let Some(vectors) = &report.eigenvectors {
        let _ = writeln!(out, "\n[eigenvectors]");
        write_float_rows(&mut out, vectors);
    }
    if let Some(projections) = &report.projections {
        let _ = writeln!(out, "\n[projections]");
        write_float_rows(&mut out, projections);
    }
    if let Some(clusters) = &report.clusters {
        for cluster in clusters {
            let _ = writeln!(out, "\n[cluster {}]", cluster.label);
            let _ = writeln!(
                out,
                "medoid = {},{}",
                format_float(cluster.medoid.0),
                format_float(cluster.medoid.1)
            );
            let members: Vec<String> = cluster
                .members
                .iter()
                .map(|(l, u)| format!("{}:{}", format_float(*l), format_float(*u)))
                .collect();
            let _ = writeln!(out, "members = {}", members.join(" "));
            for (i, vector) in cluster.eigenvectors.iter().enumerate() {
                let cells: Vec<String> = vector.iter().map(|v| format_float(*v)).collect();
                let _ = writeln!(out, "e{} = {}", i + 1, cells.join(","));
            }
        }
    }
    if let Some(trace) = &report.pseudo_t2_trace {
        let _ = writeln!(out, "\n[pseudo-t2]");
        for v in trace {
            let _ = writeln!(out, "{}", format_float(*v));
        }
    }
    for table in &report.tables {
        let _ = writeln!(out, "\n[table {}]", table.name);
        for (l, u, value) in &table.rows {
            let cell = match value {
                Some(v) => format_float(*v),
                None => "empty".to_string(),
            };
            let _ = writeln!(out, "{},{},{}", format_float(*l), format_float(*u), cell);
        }
    }
    out
}

/// Renders a per-scale-point table as standalone CSV.
pub fn table_to_csv(table: &ScaleTable) -> String {
    let mut out = String::from("lower,upper,value\n");
    for (l, u, value) in &table.rows {
        let cell = match value {
            Some(v) => format_float(*v),
            None => "empty".to_string(),
        };
        let _ = writeln!(out, "{},{},{}", format_float(*l), format_float(*u), cell);
    }
    out
}

fn parse_float(s: &str, row: usize) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Parse {
        row,
        column: 1,
        message: format!("bad float '{s}'"),
    })
}

fn parse_float_row(line: &str, row: usize) -> Result<Vec<f64>> {
    line.split(',').map(|c| parse_float(c, row)).collect()
}

/// Parses a serialized report document back into its structure.
pub fn from_text(text: &str) -> Result<AnalysisReport> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, line)) if line.trim() == HEADER => {}
        _ => {
            return Err(Error::Parse {
                row: 1,
                column: 1,
                message: format!("missing '{HEADER}' header"),
            })
        }
    }

    let mut report = AnalysisReport::default();
    let mut section = String::new();
    for (idx, raw_line) in lines {
        let row = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = name.to_string();
            if let Some(table_name) = section.strip_prefix("table ") {
                report.tables.push(ScaleTable {
                    name: table_name.to_string(),
                    rows: Vec::new(),
                });
            } else if let Some(label) = section.strip_prefix("cluster ") {
                let label: usize = label.parse().map_err(|_| Error::Parse {
                    row,
                    column: 1,
                    message: format!("bad cluster label '{label}'"),
                })?;
                report.clusters.get_or_insert_with(Vec::new).push(ClusterEntry {
                    label,
                    medoid: (0.0, 0.0),
                    members: Vec::new(),
                    eigenvectors: Vec::new(),
                });
            }
            continue;
        }
        match section.as_str() {
            "metadata" => {
                let (k, v) = line.split_once('=').ok_or(Error::Parse {
                    row,
                    column: 1,
                    message: "metadata line without '='".into(),
                })?;
                report
                    .metadata
                    .push((k.trim().to_string(), v.trim().to_string()));
            }
            "eigenvalues" => report
                .eigenvalues
                .get_or_insert_with(Vec::new)
                .push(parse_float(line, row)?),
            "eigenvectors" => report
                .eigenvectors
                .get_or_insert_with(Vec::new)
                .push(parse_float_row(line, row)?),
            "projections" => report
                .projections
                .get_or_insert_with(Vec::new)
                .push(parse_float_row(line, row)?),
            "pseudo-t2" => report
                .pseudo_t2_trace
                .get_or_insert_with(Vec::new)
                .push(parse_float(line, row)?),
            s if s.starts_with("table ") => {
                let table = report.tables.last_mut().expect("table section open");
                let mut cells = line.splitn(3, ',');
                let l = parse_float(cells.next().unwrap_or(""), row)?;
                let u = parse_float(cells.next().unwrap_or(""), row)?;
                let raw = cells.next().ok_or(Error::Parse {
                    row,
                    column: 3,
                    message: "table row needs 3 cells".into(),
                })?;
                let value = if raw.trim() == "empty" {
                    None
                } else {
                    Some(parse_float(raw, row)?)
                };
                table.rows.push((l, u, value));
            }
            s if s.starts_with("cluster ") => {
                let cluster = report
                    .clusters
                    .as_mut()
                    .and_then(|c| c.last_mut())
                    .expect("cluster section open");
                let (key, value) = line.split_once('=').ok_or(Error::Parse {
                    row,
                    column: 1,
                    message: "cluster line without '='".into(),
                })?;
                let key = key.trim();
                let value = value.trim();
                if key == "medoid" {
                    let nums = parse_float_row(value, row)?;
                    if nums.len() != 2 {
                        return Err(Error::Parse {
                            row,
                            column: 1,
                            message: "medoid needs two bounds".into(),
                        });
                    }
                    cluster.medoid = (nums[0], nums[1]);
                } else if key == "members" {
                    for part in value.split_whitespace() {
                        let (l, u) = part.split_once(':').ok_or(Error::Parse {
                            row,
                            column: 1,
                            message: format!("bad member interval '{part}'"),
                        })?;
                        cluster
                            .members
                            .push((parse_float(l, row)?, parse_float(u, row)?));
                    }
                } else if key.starts_with('e') {
                    cluster.eigenvectors.push(parse_float_row(value, row)?);
                } else {
                    return Err(Error::Parse {
                        row,
                        column: 1,
                        message: format!("unknown cluster field '{key}'"),
                    });
                }
            }
            _ => {
                return Err(Error::Parse {
                    row,
                    column: 1,
                    message: format!("line outside known section: '{line}'"),
                })
            }
        }
    }
    Ok(report)
}
