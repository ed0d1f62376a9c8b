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

//! Sigmoid surrogate for the planarity probability surface and its inverse.
//!
//! ```text
//! zeta(n, d) = 1 / (2^((d - (0.5 + c1/n^c2)) · (c3 + c4·n^(1/3))) + 1)
//! psi(n, p)  = log2(1/p - 1) / (c3 + c4·n^(1/3)) + 0.5 + c1/n^c2
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exponents beyond this magnitude saturate `zeta` to exactly 0 or 1.
pub const ZETA_EXPONENT_CUTOFF: f64 = 1024.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ModelError {
    #[error("parameters need c2 > 0 and c4 > 0 (got c2 = {c2}, c4 = {c4})")]
    Domain { c2: f64, c4: f64 },
    #[error("probability {0} is outside (0, 1)")]
    Probability(f64),
    #[error("need 0 < p_min < p_max < 1 (got p_min = {p_min}, p_max = {p_max})")]
    Ordering { p_min: f64, p_max: f64 },
}

impl ZetaParams {
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Result<Self, ModelError> {
        if !(c2 > 0.0 && c4 > 0.0) {
            return Err(ModelError::Domain { c2, c4 });
        }
        Ok(ZetaParams { c1, c2, c3, c4 })
    }

    /// Density at which `zeta` crosses one half: `0.5 + c1/n^c2`.
    pub fn midpoint(&self, n: f64) -> f64 {
        0.5 + self.c1 / n.powf(self.c2)
    }

    /// Steepness factor `c3 + c4·n^(1/3)`.
    pub fn steepness(&self, n: f64) -> f64 {
        self.c3 + self.c4 * n.cbrt()
    }
}

pub fn zeta(n: f64, d: f64, params: &ZetaParams) -> f64 {
    let exponent = (d - params.midpoint(n)) * params.steepness(n);
    if exponent > ZETA_EXPONENT_CUTOFF {
        0.0
    } else if exponent < -ZETA_EXPONENT_CUTOFF {
        1.0
    } else {
        1.0 / (exponent.exp2() + 1.0)
    }
}

pub fn psi(n: f64, p: f64, params: &ZetaParams) -> Result<f64, ModelError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(ModelError::Probability(p));
    }
    Ok((1.0 / p - 1.0).log2() / params.steepness(n) + params.midpoint(n))
}

/// Width of the band where `zeta` falls from `p_max` to `p_min`, measured in
/// units of `n^(-1/3)`:
///
/// ```text
/// (psi(n, p_min) - psi(n, p_max)) / n^(-1/3)
///     = (log2(1/p_min - 1) - log2(1/p_max - 1)) / (c3·n^(-1/3) + c4)
/// ```
pub fn transition_width_ratio(n: f64, p_min: f64, p_max: f64, params: &ZetaParams) -> Result<f64, ModelError> {
    let spread = log_odds_spread(p_min, p_max)?;
    Ok(spread / (params.c3 / n.cbrt() + params.c4))
}

/// Limit of [`transition_width_ratio`] as `n → ∞`.
pub fn transition_width_limit(p_min: f64, p_max: f64, params: &ZetaParams) -> Result<f64, ModelError> {
    Ok(log_odds_spread(p_min, p_max)? / params.c4)
}

fn log_odds_spread(p_min: f64, p_max: f64) -> Result<f64, ModelError> {
    if !(0.0 < p_min && p_min < p_max && p_max < 1.0) {
        return Err(ModelError::Ordering { p_min, p_max });
    }
    Ok((1.0 / p_min - 1.0).log2() - (1.0 / p_max - 1.0).log2())
}
