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

//! Recognizers for the four measured properties: acyclicity, planarity,
//! outerplanarity and near-planarity (skewness at most one).

mod kuratowski;
mod planarity;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use kuratowski::{
    find_kuratowski_bruteforce, KuratowskiKind, KuratowskiWitness, SearchBudgetExceeded, BRUTE_FORCE_MAX_VERTICES,
};

use crate::graph::{make_connected, Edge, Graph};
use crate::unionfind::DisjointSets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Acyclic,
    Planar,
    Outerplanar,
    #[serde(rename = "nearplanar")]
    NearPlanar,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Acyclic,
        Property::Planar,
        Property::Outerplanar,
        Property::NearPlanar,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Property::Acyclic => "acyclic",
            Property::Planar => "planar",
            Property::Outerplanar => "outerplanar",
            Property::NearPlanar => "nearplanar",
        }
    }

    /// Decides the property with the default strategies (per-component
    /// planarity, near-planarity fast path enabled).
    pub fn holds(self, g: &Graph) -> bool {
        match self {
            Property::Acyclic => is_acyclic(g),
            Property::Planar => is_planar(g),
            Property::Outerplanar => is_outerplanar(g),
            Property::NearPlanar => near_planar_verdict(g, true),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown property {0:?} (expected acyclic, planar, outerplanar or nearplanar)")]
pub struct UnknownProperty(pub String);

impl FromStr for Property {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "acyclic" => Ok(Property::Acyclic),
            "planar" => Ok(Property::Planar),
            "outerplanar" => Ok(Property::Outerplanar),
            "nearplanar" | "near-planar" | "near_planar" => Ok(Property::NearPlanar),
            _ => Err(UnknownProperty(s.to_string())),
        }
    }
}

/// True iff `g` is a forest. Union-find cycle detection.
pub fn is_acyclic(g: &Graph) -> bool {
    if g.edge_count() >= g.vertex_count().max(1) {
        return false;
    }
    let mut sets = DisjointSets::new(g.vertex_count());
    g.edges().iter().all(|e| sets.union(e.low(), e.high()))
}

/// Planarity by the left-right criterion; each component is tested from its
/// own DFS root.
pub fn is_planar(g: &Graph) -> bool {
    planarity::lr_planarity(g)
}

/// Planarity of the graph after joining its components with the fewest
/// possible edges. Agrees with [`is_planar`]; kept as a cross-check.
pub fn is_planar_via_make_connected(g: &Graph) -> bool {
    let (connected, _) = make_connected(g);
    planarity::lr_planarity(&connected)
}

/// Outerplanarity via the apex reduction: `g` is outerplanar iff `g` plus a
/// vertex adjacent to everything is planar.
pub fn is_outerplanar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n >= 2 && g.edge_count() > 2 * n - 3 {
        return false;
    }
    is_planar(&g.with_apex())
}

/// Result of the near-planarity test. `removed_edge` is set only when the
/// graph itself is not planar but becomes planar without that edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NearPlanarWitness {
    pub verdict: bool,
    pub removed_edge: Option<Edge>,
}

impl NearPlanarWitness {
    const NO: NearPlanarWitness = NearPlanarWitness {
        verdict: false,
        removed_edge: None,
    };
}

/// Near-planarity with a witness edge: the first edge in canonical order
/// whose removal leaves a planar graph.
pub fn is_near_planar(g: &Graph) -> NearPlanarWitness {
    if is_planar(g) {
        return NearPlanarWitness {
            verdict: true,
            removed_edge: None,
        };
    }
    let n = g.vertex_count();
    if n >= 3 && g.edge_count() > 3 * n - 5 {
        return NearPlanarWitness::NO;
    }
    g.edges()
        .iter()
        .find(|&&e| is_planar(&g.without_edge(e)))
        .map(|&e| NearPlanarWitness {
            verdict: true,
            removed_edge: Some(e),
        })
        .unwrap_or(NearPlanarWitness::NO)
}

/// Smallest edge count of a graph that is not near-planar (`K3,4`).
pub const SMALLEST_NON_NEAR_PLANAR_EDGES: usize = 12;

/// Verdict only. With `fast_path`, graphs with at most 11 edges are accepted
/// without testing.
pub fn near_planar_verdict(g: &Graph, fast_path: bool) -> bool {
    if fast_path && g.edge_count() < SMALLEST_NON_NEAR_PLANAR_EDGES {
        return true;
    }
    is_near_planar(g).verdict
}

/// Densities outside `[lo, hi]` force the property (below) or rule it out
/// (above).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignificantInterval {
    pub property: Property,
    pub lo: f64,
    pub hi: f64,
}

pub fn significant_interval(property: Property, n: usize) -> SignificantInterval {
    assert!(n >= 1, "significant interval needs n >= 1");
    let nf = n as f64;
    let (lo_edges, hi_edges) = match property {
        Property::Acyclic => (3.0, nf - 1.0),
        Property::Planar => (9.0, 3.0 * nf - 6.0),
        Property::Outerplanar => (6.0, 2.0 * nf - 3.0),
        Property::NearPlanar => (14.0, 3.0 * nf - 5.0),
    };
    SignificantInterval {
        property,
        lo: lo_edges / nf,
        hi: hi_edges / nf,
    }
}
