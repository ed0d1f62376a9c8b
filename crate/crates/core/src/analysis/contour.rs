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

//! Iso-frequency lines of a surface.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::surface::FrequencySurface;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourPoint {
    pub n: usize,
    pub density: f64,
}

/// Points of the contour at `height`, at most one per `n`, sorted by `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourCurve {
    pub height: f64,
    pub points: Vec<ContourPoint>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContourError {
    #[error("contour height {0} is outside (0, 1)")]
    Height(f64),
    #[error("surface is too sparse: no vertex count has two measured densities")]
    TooSparse,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// For each `n`, scans the measured densities in increasing order and stops
/// at the first adjacent pair whose frequencies bracket `height` from above
/// (`f_lo >= height >= f_hi`). The crossing is interpolated linearly. Vertex
/// counts without such a pair contribute no point.
pub fn contour(surface: &FrequencySurface, height: f64) -> Result<ContourCurve, ContourError> {
    if !(height > 0.0 && height < 1.0) {
        return Err(ContourError::Height(height));
    }
    let mut columns: BTreeMap<usize, Vec<(f64, f64, u64)>> = BTreeMap::new();
    for row in surface.measured() {
        columns.entry(row.n).or_default().push((
            row.density.as_f64(),
            row.frequency().expect("measured row"),
            row.density.micros(),
        ));
    }
    if columns.values().all(|c| c.len() < 2) {
        return Err(ContourError::TooSparse);
    }
    let mut points = Vec::new();
    for (n, mut column) in columns {
        column.sort_by_key(|&(_, _, key)| key);
        let crossing = column.windows(2).find_map(|w| {
            let (d_lo, f_lo, _) = w[0];
            let (d_hi, f_hi, _) = w[1];
            if f_lo >= height && height >= f_hi {
                if f_lo == f_hi {
                    Some(d_lo)
                } else {
                    Some(d_lo + (f_lo - height) / (f_lo - f_hi) * (d_hi - d_lo))
                }
            } else {
                None
            }
        });
        if let Some(density) = crossing {
            points.push(ContourPoint { n, density });
        }
    }
    Ok(ContourCurve { height, points })
}

impl ContourCurve {
    pub fn density_at(&self, n: usize) -> Option<f64> {
        self.points
            .binary_search_by_key(&n, |p| p.n)
            .ok()
            .map(|i| self.points[i].density)
    }

    /// `n,density` CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,density\n");
        for p in &self.points {
            out.push_str(&format!("{},{}\n", p.n, p.density));
        }
        out
    }

    /// Reads the `n,density` CSV. The height is not stored in the file.
    pub fn from_csv(text: &str, height: f64) -> Result<ContourCurve, ContourError> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let headers = reader.headers().map_err(|e| ContourError::Malformed {
            line: 1,
            message: e.to_string(),
        })?;
        if headers.iter().collect::<Vec<_>>() != ["n", "density"] {
            return Err(ContourError::Malformed {
                line: 1,
                message: "expected header \"n,density\"".into(),
            });
        }
        let mut points: Vec<ContourPoint> = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let line = i + 2;
            let bad = |message: String| ContourError::Malformed { line, message };
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            if rec.len() != 2 {
                return Err(bad(format!("expected 2 fields, found {}", rec.len())));
            }
            let n: usize = rec[0].trim().parse().map_err(|_| bad(format!("bad n {:?}", &rec[0])))?;
            let density: f64 = rec[1]
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad density {:?}", &rec[1])))?;
            if points.last().is_some_and(|p| p.n >= n) {
                return Err(bad("points must be strictly increasing in n".into()));
            }
            points.push(ContourPoint { n, density });
        }
        Ok(ContourCurve { height, points })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Density;
    use crate::recognize::Property;
    use crate::surface::SurfaceRow;

    fn row(n: usize, d: &str, samples: u64, positives: u64) -> SurfaceRow {
        let density: Density = d.parse().unwrap();
        SurfaceRow {
            n,
            density,
            m: crate::density::edge_count(n, density).unwrap_or(0),
            samples,
            positives,
        }
    }

    fn surface(rows: Vec<SurfaceRow>) -> FrequencySurface {
        FrequencySurface {
            property: Property::Planar,
            plan: None,
            rows,
        }
    }

    #[test]
    fn midpoint_interpolation() {
        let s = surface(vec![row(100, "0.5", 10, 10), row(100, "0.6", 10, 0)]);
        let c = contour(&s, 0.5).unwrap();
        assert_eq!(c.points.len(), 1);
        assert!((c.points[0].density - 0.55).abs() < 1e-12);
    }

    #[test]
    fn exact_hit_returns_cell_density() {
        let s = surface(vec![
            row(100, "0.5", 10, 10),
            row(100, "0.6", 10, 5),
            row(100, "0.7", 10, 0),
        ]);
        let c = contour(&s, 0.5).unwrap();
        assert_eq!(c.points[0].density, 0.6);
    }

    #[test]
    fn first_bracket_wins_and_missing_columns_are_omitted() {
        let s = surface(vec![
            row(50, "0.5", 10, 10),
            row(50, "0.6", 10, 10),
            row(60, "0.5", 10, 9),
            row(60, "0.6", 10, 2),
            row(60, "0.7", 10, 6),
            row(60, "0.8", 10, 0),
        ]);
        let c = contour(&s, 0.5).unwrap();
        assert_eq!(c.points.len(), 1);
        assert_eq!(c.points[0].n, 60);
        assert!((c.points[0].density - (0.5 + 0.4 / 0.7 * 0.1)).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let s = surface(vec![row(10, "0.5", 10, 10), row(11, "0.5", 10, 0)]);
        assert_eq!(contour(&s, 0.5), Err(ContourError::TooSparse));
        assert_eq!(contour(&s, 1.0), Err(ContourError::Height(1.0)));
    }

    #[test]
    fn csv_round_trip() {
        let c = ContourCurve {
            height: 0.5,
            points: vec![
                ContourPoint { n: 20, density: 0.75 },
                ContourPoint { n: 40, density: 0.6125 },
            ],
        };
        assert_eq!(c.to_csv(), "n,density\n20,0.75\n40,0.6125\n");
        assert_eq!(ContourCurve::from_csv(&c.to_csv(), 0.5).unwrap(), c);
        assert!(ContourCurve::from_csv("n,density\n3,x\n", 0.5).is_err());
    }
}
