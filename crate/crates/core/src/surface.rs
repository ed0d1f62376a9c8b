// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Frequency surfaces and their CSV form.
//!
//! ```text
//! schema=1,property,n,density,m,samples,positives,frequency
//! 1,planar,200,0.6,120,1000,523,0.523
//! 1,planar,5,2.5,13,0,0,
//! ```
//!
//! Skipped (infeasible) cells have `samples = 0` and an empty frequency.
//! The plan that produced the surface is stored next to the CSV as
//! `<stem>.plan.json`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::density::Density;
use crate::experiment::ExperimentPlan;
use crate::recognize::Property;

pub const SCHEMA_VERSION: u32 = 1;
pub const HEADER: &str = "schema=1,property,n,density,m,samples,positives,frequency";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceRow {
    pub n: usize,
    pub density: Density,
    pub m: usize,
    pub samples: u64,
    pub positives: u64,
}

impl SurfaceRow {
    pub fn skipped(n: usize, density: Density, m: usize) -> Self {
        SurfaceRow {
            n,
            density,
            m,
            samples: 0,
            positives: 0,
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.samples == 0
    }

    pub fn frequency(&self) -> Option<f64> {
        if self.samples == 0 {
            None
        } else {
            Some(self.positives as f64 / self.samples as f64)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySurface {
    pub property: Property,
    pub plan: Option<ExperimentPlan>,
    /// Sorted by `(n, density)`.
    pub rows: Vec<SurfaceRow>,
}

impl FrequencySurface {
    pub fn skipped(&self) -> impl Iterator<Item = &SurfaceRow> {
        self.rows.iter().filter(|r| r.is_skipped())
    }

    pub fn measured(&self) -> impl Iterator<Item = &SurfaceRow> {
        self.rows.iter().filter(|r| !r.is_skipped())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(48 * (self.rows.len() + 1));
        out.push_str(HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format_row(self.property, row));
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("unsupported surface schema {found:?} (this build reads schema={SCHEMA_VERSION})")]
    SchemaMismatch { found: String },
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error("plan file {path}: {message}")]
    Plan { path: String, message: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn frequency_text(row: &SurfaceRow) -> String {
    row.frequency().map(|f| f.to_string()).unwrap_or_default()
}

pub fn format_row(property: Property, row: &SurfaceRow) -> String {
    format!(
        "{SCHEMA_VERSION},{},{},{},{},{},{},{}\n",
        property.tag(),
        row.n,
        row.density,
        row.m,
        row.samples,
        row.positives,
        frequency_text(row)
    )
}

/// `surface.csv` → `surface.plan.json`.
pub fn plan_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("plan.json")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> SurfaceError + '_ {
    move |source| SurfaceError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Writes the CSV and, when the surface carries one, its plan.
pub fn write_surface(path: &Path, surface: &FrequencySurface) -> Result<(), SurfaceError> {
    fs::write(path, surface.to_csv()).map_err(io_err(path))?;
    if let Some(plan) = &surface.plan {
        let pp = plan_path(path);
        let json = serde_json::to_string_pretty(plan).expect("plan serializes");
        fs::write(&pp, json + "\n").map_err(io_err(&pp))?;
    }
    Ok(())
}

pub fn read_surface(path: &Path) -> Result<FrequencySurface, SurfaceError> {
    read(path, false)
}

/// Like [`read_surface`], but a damaged final line (an interrupted write) is
/// dropped instead of reported.
pub fn read_surface_prefix(path: &Path) -> Result<FrequencySurface, SurfaceError> {
    read(path, true)
}

fn read(path: &Path, tolerate_torn_tail: bool) -> Result<FrequencySurface, SurfaceError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let (property, rows) = parse_csv(&text, tolerate_torn_tail)?;
    let pp = plan_path(path);
    let plan = if pp.exists() {
        let json = fs::read_to_string(&pp).map_err(io_err(&pp))?;
        let plan: ExperimentPlan = serde_json::from_str(&json).map_err(|e| SurfaceError::Plan {
            path: pp.display().to_string(),
            message: e.to_string(),
        })?;
        Some(plan)
    } else {
        None
    };
    let property = match (property, &plan) {
        (Some(p), _) => p,
        (None, Some(plan)) => plan.property,
        (None, None) => {
            return Err(SurfaceError::Malformed {
                line: 1,
                message: "surface has no rows and no plan; property unknown".into(),
            })
        }
    };
    Ok(FrequencySurface { property, plan, rows })
}

/// Parses the CSV body. Returns the property named by the rows (if any).
pub fn parse_csv(text: &str, tolerate_torn_tail: bool) -> Result<(Option<Property>, Vec<SurfaceRow>), SurfaceError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(Ok(h)) => h,
        Some(Err(e)) => {
            return Err(SurfaceError::Malformed {
                line: 1,
                message: e.to_string(),
            })
        }
        None => {
            return Err(SurfaceError::Malformed {
                line: 1,
                message: "empty file".into(),
            })
        }
    };
    let first = header.get(0).unwrap_or("");
    if first != format!("schema={SCHEMA_VERSION}") {
        if first.starts_with("schema=") {
            return Err(SurfaceError::SchemaMismatch { found: first.into() });
        }
        return Err(SurfaceError::Malformed {
            line: 1,
            message: format!("expected header {HEADER:?}"),
        });
    }
    if header.iter().collect::<Vec<_>>().join(",") != HEADER {
        return Err(SurfaceError::Malformed {
            line: 1,
            message: format!("expected header {HEADER:?}"),
        });
    }

    let ends_with_newline = text.ends_with('\n');
    let mut property = None;
    let mut rows: Vec<SurfaceRow> = Vec::new();
    let mut pending = records.peekable();
    while let Some(record) = pending.next() {
        let is_last = pending.peek().is_none();
        let parsed = record
            .map_err(|e| (e.position().map_or(0, |p| p.line()), e.to_string()))
            .and_then(|rec| {
                let line = rec.position().map_or(0, |p| p.line());
                parse_row(&rec).map_err(|m| (line, m))
            });
        match parsed {
            Ok((p, row)) => {
                if let Some(prev) = property {
                    if prev != p {
                        return Err(SurfaceError::Malformed {
                            line: rows.len() as u64 + 2,
                            message: format!("mixed properties {prev} and {p}"),
                        });
                    }
                }
                if let Some(last) = rows.last() {
                    if (last.n, last.density) >= (row.n, row.density) {
                        return Err(SurfaceError::Malformed {
                            line: rows.len() as u64 + 2,
                            message: "rows are not strictly sorted by (n, density)".into(),
                        });
                    }
                }
                property = Some(p);
                rows.push(row);
            }
            Err(_) if is_last && tolerate_torn_tail && !ends_with_newline => break,
            Err((line, message)) => return Err(SurfaceError::Malformed { line, message }),
        }
    }
    Ok((property, rows))
}

fn parse_row(rec: &csv::StringRecord) -> Result<(Property, SurfaceRow), String> {
    if rec.len() != 8 {
        return Err(format!("expected 8 fields, found {}", rec.len()));
    }
    if rec[0] != *SCHEMA_VERSION.to_string() {
        return Err(format!("row schema {:?} does not match header", &rec[0]));
    }
    let property: Property = rec[1]
        .parse()
        .map_err(|e: crate::recognize::UnknownProperty| e.to_string())?;
    let int = |i: usize, name: &str| -> Result<u64, String> {
        rec[i]
            .parse()
            .map_err(|_| format!("{name}: {:?} is not an unsigned integer", &rec[i]))
    };
    let row = SurfaceRow {
        n: int(2, "n")? as usize,
        density: rec[3]
            .parse()
            .map_err(|e: crate::density::DensityError| e.to_string())?,
        m: int(4, "m")? as usize,
        samples: int(5, "samples")?,
        positives: int(6, "positives")?,
    };
    if row.positives > row.samples {
        return Err("positives exceed samples".into());
    }
    if crate::density::edge_count(row.n, row.density).unwrap_or_else(|e| e.m) != row.m {
        return Err(format!("m = {} does not match Round(n·density)", row.m));
    }
    if rec[7] != *frequency_text(&row) {
        return Err(format!("frequency {:?} does not match positives/samples", &rec[7]));
    }
    Ok((property, row))
}
