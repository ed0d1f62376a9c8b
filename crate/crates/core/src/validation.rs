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

//! Measured acyclicity frequencies against the exact forest probability.

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::density::{density_range, edge_count, Density};
use crate::exact::{acyclic_probability, format_probability, rational_to_f64, OracleError};
use crate::recognize::Property;
use crate::surface::FrequencySurface;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcyclicValidation {
    pub cells: usize,
    pub mean_abs_error: f64,
    pub peak_abs_error: f64,
    /// Mean of `frequency - probability`.
    pub signed_mean_error: f64,
    pub peak_n: usize,
    pub peak_density: Density,
}

#[derive(Debug, Error)]
pub enum ValidationError {
    #[error("surface measures {0}, not acyclic")]
    WrongProperty(Property),
    #[error("surface has no measured cells")]
    Empty,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Compares every measured cell with the exact probability. Differences are
/// taken in exact arithmetic and converted to `f64` afterwards.
pub fn validate_acyclic(surface: &FrequencySurface) -> Result<AcyclicValidation, ValidationError> {
    if surface.property != Property::Acyclic {
        return Err(ValidationError::WrongProperty(surface.property));
    }
    let mut cells = 0usize;
    let (mut abs_sum, mut signed_sum, mut peak) = (0.0, 0.0, -1.0);
    let (mut peak_n, mut peak_density) = (0, Density::ZERO);
    for row in surface.measured() {
        let exact = acyclic_probability(row.n, row.m)?;
        let measured = BigRational::new(row.positives.into(), row.samples.into());
        let diff = rational_to_f64(&(measured - exact));
        let abs = diff.abs();
        abs_sum += abs;
        signed_sum += diff;
        if abs > peak {
            peak = abs;
            peak_n = row.n;
            peak_density = row.density;
        }
        cells += 1;
    }
    if cells == 0 {
        return Err(ValidationError::Empty);
    }
    Ok(AcyclicValidation {
        cells,
        mean_abs_error: abs_sum / cells as f64,
        peak_abs_error: peak,
        signed_mean_error: signed_sum / cells as f64,
        peak_n,
        peak_density,
    })
}

/// One row of the exact acyclicity table.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityRow {
    pub n: usize,
    pub density: Density,
    pub m: usize,
    pub probability: BigRational,
}

/// Exact acyclicity probabilities along a density range; infeasible
/// densities are left out.
pub fn acyclic_probability_table(
    n: usize,
    min: Density,
    max: Density,
    step: Density,
) -> Result<Vec<ProbabilityRow>, OracleError> {
    let mut rows = Vec::new();
    for density in density_range(min, max, step) {
        let Ok(m) = edge_count(n, density) else { continue };
        rows.push(ProbabilityRow {
            n,
            density,
            m,
            probability: acyclic_probability(n, m)?,
        });
    }
    Ok(rows)
}

/// `n,density,m,probability` CSV.
pub fn probability_table_csv(rows: &[ProbabilityRow]) -> String {
    let mut out = String::from("n,density,m,probability\n");
    for r in rows {
        debug_assert!(!r.probability.is_negative());
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.density,
            r.m,
            format_probability(&r.probability)
        ));
    }
    out
}
