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

//! Monte Carlo sweeps over an `(n, density)` grid.
//!
//! Every sample has its own seed, derived from the master seed, the cell's
//! `n` and `m`, the plan's stream tag and the sample index. A cell's result
//! therefore does not depend on which worker computed it or in what order,
//! and sweeps are byte-identical for any worker count.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::density::{density_range, edge_count, Density};
use crate::random::{derive_cell_seed, random_simple_graph, RngState};
use crate::recognize::{is_acyclic, is_outerplanar, is_planar, near_planar_verdict, Property};
use crate::surface::{self, FrequencySurface, SurfaceError, SurfaceRow};

/// Samples per cell for full-scale runs.
pub const FULL_SCALE_SAMPLES: u64 = 10_000;
/// Samples per cell of the reduced desk-scale profile.
pub const DESK_SAMPLES: u64 = 1_000;
/// Stream tag used when one graph sequence feeds several properties.
pub const SHARED_STREAM: &str = "shared";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub property: Property,
    /// Vertex counts, strictly increasing.
    pub n_values: Vec<usize>,
    pub density_min: Density,
    pub density_max: Density,
    pub density_step: Density,
    pub samples: u64,
    pub seed: u64,
    /// Tag mixed into every sample seed; the property tag unless several
    /// properties share one graph sequence.
    pub stream: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("density step must be positive")]
    ZeroStep,
    #[error("samples per cell must be at least 1")]
    NoSamples,
    #[error("the grid is empty")]
    EmptyGrid,
    #[error("vertex counts must be positive and strictly increasing")]
    BadVertexCounts,
}

impl ExperimentPlan {
    /// The full-scale grid for a property: `n = 1..400` (`1..200` for
    /// near-planarity), 10,000 samples per cell, and the property's density
    /// range (acyclic 0–1 step 0.05, planar and near-planar 0–3 step 0.1,
    /// outerplanar 0–2 step 0.1).
    pub fn default_for(property: Property) -> Self {
        let (n_max, d_max, step) = match property {
            Property::Acyclic => (400, 1_000_000, 50_000),
            Property::Planar => (400, 3_000_000, 100_000),
            Property::Outerplanar => (400, 2_000_000, 100_000),
            Property::NearPlanar => (200, 3_000_000, 100_000),
        };
        ExperimentPlan {
            property,
            n_values: (1..=n_max).collect(),
            density_min: Density::ZERO,
            density_max: Density::from_micros(d_max),
            density_step: Density::from_micros(step),
            samples: FULL_SCALE_SAMPLES,
            seed: 0,
            stream: property.tag().to_string(),
        }
    }

    pub fn densities(&self) -> Vec<Density> {
        if self.density_step.micros() == 0 {
            return Vec::new();
        }
        density_range(self.density_min, self.density_max, self.density_step)
    }

    /// Cells in canonical order: by `n`, then density.
    pub fn cells(&self) -> Vec<(usize, Density)> {
        let ds = self.densities();
        self.n_values
            .iter()
            .flat_map(|&n| ds.iter().map(move |&d| (n, d)))
            .collect()
    }

    pub fn validate(&self) -> Result<(), PlanError> {
        if self.density_step.micros() == 0 {
            return Err(PlanError::ZeroStep);
        }
        if self.samples == 0 {
            return Err(PlanError::NoSamples);
        }
        if self.n_values.first() == Some(&0) || self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PlanError::BadVertexCounts);
        }
        if self.n_values.is_empty() || self.density_min > self.density_max {
            return Err(PlanError::EmptyGrid);
        }
        Ok(())
    }

    /// Number of recognizer calls over feasible cells.
    pub fn total_tests(&self) -> u64 {
        self.cells().iter().filter(|&&(n, d)| edge_count(n, d).is_ok()).count() as u64 * self.samples
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid plan: {0}")]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("existing results in {0} were produced by a different plan")]
    PlanMismatch(String),
    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

fn decide(property: Property, g: &crate::graph::Graph) -> bool {
    match property {
        Property::Acyclic => is_acyclic(g),
        Property::Planar => is_planar(g),
        Property::Outerplanar => is_outerplanar(g),
        Property::NearPlanar => near_planar_verdict(g, true),
    }
}

/// Runs the samples of one cell for several properties at once, all on the
/// same graphs.
fn measure_cell(plan: &ExperimentPlan, properties: &[Property], n: usize, density: Density) -> Vec<SurfaceRow> {
    let m = match edge_count(n, density) {
        Ok(m) => m,
        Err(inf) => {
            return properties
                .iter()
                .map(|_| SurfaceRow::skipped(n, density, inf.m))
                .collect()
        }
    };
    let mut positives = vec![0u64; properties.len()];
    for r in 0..plan.samples {
        let seed = derive_cell_seed(plan.seed, n as u64, m as u64, &plan.stream, r);
        let mut rng = RngState::from_seed(seed);
        let g = random_simple_graph(n, m, &mut rng).expect("feasible cell");
        for (count, &p) in positives.iter_mut().zip(properties) {
            *count += decide(p, &g) as u64;
        }
    }
    positives
        .into_iter()
        .map(|pos| SurfaceRow {
            n,
            density,
            m,
            samples: plan.samples,
            positives: pos,
        })
        .collect()
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, SweepError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))
}

fn measure_cells(
    pool: &rayon::ThreadPool,
    plan: &ExperimentPlan,
    properties: &[Property],
    cells: &[(usize, Density)],
) -> Vec<Vec<SurfaceRow>> {
    pool.install(|| {
        cells
            .par_iter()
            .map(|&(n, d)| measure_cell(plan, properties, n, d))
            .collect()
    })
}

/// Measures every cell of the plan in memory.
pub fn run_sweep(plan: &ExperimentPlan, workers: usize) -> Result<FrequencySurface, SweepError> {
    plan.validate()?;
    let pool = pool(workers)?;
    let rows = measure_cells(&pool, plan, &[plan.property], &plan.cells())
        .into_iter()
        .map(|mut r| r.pop().unwrap())
        .collect();
    Ok(FrequencySurface {
        property: plan.property,
        plan: Some(plan.clone()),
        rows,
    })
}

/// Measures several properties on one shared graph sequence per cell (the
/// stream tag is forced to [`SHARED_STREAM`]). Returns one surface per
/// property, in the order given.
pub fn run_multi_sweep(
    plan: &ExperimentPlan,
    properties: &[Property],
    workers: usize,
) -> Result<Vec<FrequencySurface>, SweepError> {
    plan.validate()?;
    let mut shared = plan.clone();
    shared.stream = SHARED_STREAM.to_string();
    let pool = pool(workers)?;
    let per_cell = measure_cells(&pool, &shared, properties, &shared.cells());
    Ok(properties
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let mut sp = shared.clone();
            sp.property = p;
            FrequencySurface {
                property: p,
                plan: Some(sp),
                rows: per_cell.iter().map(|rows| rows[i]).collect(),
            }
        })
        .collect())
}

/// Runs a sweep that appends finished cells to `csv_path` in canonical
/// order, so an interrupted run leaves a valid prefix. With `resume`, rows
/// already on disk for the same plan are kept and only the missing cells
/// are computed; a torn final line is discarded.
pub fn run_sweep_to_file(
    plan: &ExperimentPlan,
    workers: usize,
    csv_path: &Path,
    resume: bool,
) -> Result<FrequencySurface, SweepError> {
    plan.validate()?;
    let cells = plan.cells();
    let mut done: Vec<SurfaceRow> = Vec::new();

    if resume && csv_path.exists() {
        let existing = surface::read_surface_prefix(csv_path)?;
        match &existing.plan {
            Some(p) if p == plan => {}
            _ => return Err(SweepError::PlanMismatch(csv_path.display().to_string())),
        }
        for (row, &(n, d)) in existing.rows.iter().zip(&cells) {
            if row.n != n || row.density != d || existing.property != plan.property {
                break;
            }
            done.push(*row);
        }
    }

    if let Some(dir) = csv_path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let prefix = FrequencySurface {
        property: plan.property,
        plan: Some(plan.clone()),
        rows: done,
    };
    surface::write_surface(csv_path, &prefix)?;
    let mut rows = prefix.rows;

    let pool = pool(workers)?;
    let batch = (workers.max(1) * 8).max(32);
    let mut file = OpenOptions::new().append(true).open(csv_path)?;
    for chunk in cells[rows.len()..].chunks(batch) {
        let measured: Vec<SurfaceRow> = measure_cells(&pool, plan, &[plan.property], chunk)
            .into_iter()
            .map(|mut r| r.pop().unwrap())
            .collect();
        let mut text = String::new();
        for row in &measured {
            text.push_str(&surface::format_row(plan.property, row));
        }
        file.write_all(text.as_bytes())?;
        file.flush()?;
        rows.extend(measured);
    }
    file.sync_all()?;
    drop(file);
    Ok(FrequencySurface {
        property: plan.property,
        plan: Some(plan.clone()),
        rows,
    })
}
