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

//! Exact decimal densities and the `m = Round(n·d)` rule.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::max_edges;

/// Fixed-point scale of [`Density`]: six decimal places.
pub const DENSITY_SCALE: u64 = 1_000_000;

/// A non-negative decimal density `m / n`, held as an integer number of
/// millionths so grid steps such as `0.1` and `0.05` are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Density(u64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("invalid density {0:?}: expected a non-negative decimal with at most 6 fractional digits")]
    Invalid(String),
}

impl Density {
    pub const ZERO: Density = Density(0);

    pub fn from_micros(micros: u64) -> Self {
        Density(micros)
    }

    pub fn micros(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / DENSITY_SCALE as f64
    }

    /// Nearest representable density (half-up on the sixth decimal).
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() || x < 0.0 {
            return None;
        }
        Some(Density(round_half_up(x * DENSITY_SCALE as f64)))
    }
}

impl FromStr for Density {
    type Err = DensityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DensityError::Invalid(s.to_string());
        let t = s.trim();
        let (int, frac) = match t.split_once('.') {
            Some((i, f)) => (i, f),
            None => (t, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
        if !digits(int) || !digits(frac) || frac.len() > 6 {
            return Err(bad());
        }
        let whole: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let mut micros: u64 = 0;
        for (i, b) in frac.bytes().enumerate() {
            micros += (b - b'0') as u64 * 10u64.pow(5 - i as u32);
        }
        whole
            .checked_mul(DENSITY_SCALE)
            .and_then(|w| w.checked_add(micros))
            .map(Density)
            .ok_or_else(bad)
    }
}

impl fmt::Display for Density {
    /// Shortest decimal with at least one fractional digit: `0.0`, `0.05`, `2.97`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.0 / DENSITY_SCALE;
        let frac = format!("{:06}", self.0 % DENSITY_SCALE);
        let frac = frac.trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        write!(f, "{whole}.{frac}")
    }
}

impl Serialize for Density {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Density {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Rounds to the nearest integer with exact halves going up (`0.5 → 1`).
///
/// `x - floor(x)` is exact for every finite non-negative `f64`, so the
/// comparison with `0.5` never misrounds the way `floor(x + 0.5)` does.
pub fn round_half_up(x: f64) -> u64 {
    debug_assert!(x >= 0.0, "round_half_up expects a non-negative value");
    let floor = x.floor();
    if x - floor >= 0.5 {
        floor as u64 + 1
    } else {
        floor as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no simple graph on {n} vertices has {m} edges (at most {max})")]
pub struct Infeasible {
    pub n: usize,
    pub m: usize,
    pub max: usize,
}

/// `Round(n·d)` computed exactly on the decimal density.
pub fn edge_count(n: usize, d: Density) -> Result<usize, Infeasible> {
    let scaled = n as u128 * d.0 as u128;
    let m = ((scaled + (DENSITY_SCALE / 2) as u128) / DENSITY_SCALE as u128) as usize;
    let max = max_edges(n);
    if m > max {
        Err(Infeasible { n, m, max })
    } else {
        Ok(m)
    }
}

/// Evenly spaced densities `min, min+step, ...` up to and including `max`.
pub fn density_range(min: Density, max: Density, step: Density) -> Vec<Density> {
    assert!(step.0 > 0, "density step must be positive");
    let mut out = Vec::new();
    let mut d = min.0;
    while d <= max.0 {
        out.push(Density(d));
        d += step.0;
    }
    out
}
