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

//! Browser bindings: the analytical transition surface, a quick Monte Carlo
//! frequency curve, and the exact forest probability curve.
//!
//! Densities cross the boundary as `f64` and are snapped to micro-units.
//! Every function also works natively.

use tippinglab::analysis::{zeta, ZetaParams};
use tippinglab::exact::{acyclic_probability, rational_to_f64};
use tippinglab::{derive_cell_seed, edge_count, random_simple_graph, Density, Property, RngState};
use wasm_bindgen::prelude::*;

/// Upper bound on graphs drawn by one `frequency_curve` call, so the page
/// stays responsive.
pub const MAX_CURVE_GRAPHS: u64 = 2_000_000;

fn density(x: f64, what: &str) -> Result<Density, String> {
    Density::from_f64(x).ok_or_else(|| format!("{what} must be a non-negative finite number, got {x}"))
}

fn grid(lo: f64, hi: f64, steps: usize) -> impl Iterator<Item = f64> {
    let span = hi - lo;
    (0..steps).map(move |i| {
        if steps == 1 {
            lo
        } else {
            lo + span * i as f64 / (steps - 1) as f64
        }
    })
}

/// Densities `d_min, d_min + step, …, ≤ d_max` on the micro-unit grid.
#[wasm_bindgen]
pub fn density_axis(d_min: f64, d_max: f64, d_step: f64) -> Result<Vec<f64>, String> {
    let (lo, hi, step) = (
        density(d_min, "d_min")?,
        density(d_max, "d_max")?,
        density(d_step, "d_step")?,
    );
    if step.micros() == 0 {
        return Err("d_step must be positive".into());
    }
    Ok(tippinglab::density::density_range(lo, hi, step)
        .into_iter()
        .map(Density::as_f64)
        .collect())
}

/// Row-major `n_steps × d_steps` grid of the model probability; row `i` is
/// the `i`-th of `n_steps` values spaced evenly on a log scale over
/// `[n_min, n_max]`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn zeta_grid(
    c1: f64,
    c2: f64,
    c3: f64,
    c4: f64,
    n_min: f64,
    n_max: f64,
    n_steps: usize,
    d_min: f64,
    d_max: f64,
    d_steps: usize,
) -> Result<Vec<f64>, String> {
    let params = ZetaParams::new(c1, c2, c3, c4).map_err(|e| e.to_string())?;
    if !(n_min >= 1.0 && n_max >= n_min) {
        return Err("need 1 <= n_min <= n_max".into());
    }
    let mut out = Vec::with_capacity(n_steps * d_steps);
    for (i, log_n) in grid(n_min.ln(), n_max.ln(), n_steps).enumerate() {
        // Keep the endpoints exact rather than round-tripped through ln/exp.
        let n = match i {
            0 => n_min,
            _ if i + 1 == n_steps => n_max,
            _ => log_n.exp(),
        };
        out.extend(grid(d_min, d_max, d_steps).map(|d| zeta(n, d, &params)));
    }
    Ok(out)
}

/// Fraction of `samples` uniform random graphs with `n` vertices that have
/// `property`, at each density of [`density_axis`]. Infeasible densities
/// give NaN. Uses the same seeding as a full sweep, so values agree with the
/// CLI for the same seed and sample count.
#[wasm_bindgen]
pub fn frequency_curve(
    property: &str,
    n: usize,
    d_min: f64,
    d_max: f64,
    d_step: f64,
    samples: u32,
    seed: u64,
) -> Result<Vec<f64>, String> {
    let property: Property = property
        .parse()
        .map_err(|e: tippinglab::recognize::UnknownProperty| e.to_string())?;
    if n == 0 || samples == 0 {
        return Err("n and samples must be positive".into());
    }
    let axis = density_axis(d_min, d_max, d_step)?;
    if axis.len() as u64 * samples as u64 > MAX_CURVE_GRAPHS {
        return Err(format!("at most {MAX_CURVE_GRAPHS} graphs per curve"));
    }
    let mut out = Vec::with_capacity(axis.len());
    for d in axis {
        let Ok(m) = edge_count(n, density(d, "density")?) else {
            out.push(f64::NAN);
            continue;
        };
        let mut positives = 0u32;
        for r in 0..samples as u64 {
            let mut rng = RngState::from_seed(derive_cell_seed(seed, n as u64, m as u64, property.tag(), r));
            let g = random_simple_graph(n, m, &mut rng).expect("feasible edge count");
            positives += property.holds(&g) as u32;
        }
        out.push(positives as f64 / samples as f64);
    }
    Ok(out)
}

/// Exact probability that a uniform graph with `n` vertices is a forest, at
/// each density of [`density_axis`]; infeasible densities give NaN.
#[wasm_bindgen]
pub fn acyclic_curve(n: usize, d_min: f64, d_max: f64, d_step: f64) -> Result<Vec<f64>, String> {
    if n == 0 {
        return Err("n must be positive".into());
    }
    density_axis(d_min, d_max, d_step)?
        .into_iter()
        .map(|d| match edge_count(n, density(d, "density")?) {
            Ok(m) => acyclic_probability(n, m)
                .map(|p| rational_to_f64(&p))
                .map_err(|e| e.to_string()),
            Err(_) => Ok(f64::NAN),
        })
        .collect()
}
