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

//! Exhaustive search for Kuratowski subdivisions on small graphs.
//!
//! A graph is non-planar iff it contains a subdivision of `K5` or `K3,3`.
//! This module checks that directly: it tries every choice of branch
//! vertices and routes the required connections as internally
//! vertex-disjoint paths through the remaining vertices. It shares no code
//! with the left-right test and is only meant as an oracle for it.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Largest vertex count the search accepts.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("brute-force Kuratowski search is limited to {max} vertices, got {n}")]
pub struct SearchBudgetExceeded {
    pub n: usize,
    pub max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision found in the graph. For `K33` the first three branch
/// vertices form one side. Each path runs between two branch vertices, and
/// its interior vertices are used by no other path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch: Vec<Vertex>,
    pub paths: Vec<Vec<Vertex>>,
}

impl KuratowskiWitness {
    /// Checks that the witness is a genuine subdivision inside `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let pairs = required_pairs(self.kind, &self.branch);
        if pairs.len() != self.paths.len() {
            return false;
        }
        let mut used = vec![false; g.vertex_count()];
        for &b in &self.branch {
            if used[b as usize] {
                return false;
            }
            used[b as usize] = true;
        }
        for (&(a, b), path) in pairs.iter().zip(&self.paths) {
            if path.len() < 2 || path[0] != a || path[path.len() - 1] != b {
                return false;
            }
            if !path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                return false;
            }
            for &x in &path[1..path.len() - 1] {
                if used[x as usize] {
                    return false;
                }
                used[x as usize] = true;
            }
        }
        true
    }
}

fn required_pairs(kind: KuratowskiKind, branch: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    match kind {
        KuratowskiKind::K5 => {
            let mut out = Vec::new();
            for i in 0..5 {
                for j in i + 1..5 {
                    out.push((branch[i], branch[j]));
                }
            }
            out
        }
        KuratowskiKind::K33 => {
            let mut out = Vec::new();
            for &a in &branch[..3] {
                for &b in &branch[3..] {
                    out.push((a, b));
                }
            }
            out
        }
    }
}

struct Router<'a> {
    g: &'a Graph,
    pairs: Vec<(Vertex, Vertex)>,
    // Vertices that may serve as path interiors and are not yet taken.
    free: Vec<bool>,
    paths: Vec<Vec<Vertex>>,
}

impl Router<'_> {
    fn route(&mut self, i: usize) -> bool {
        if i == self.pairs.len() {
            return true;
        }
        let (a, b) = self.pairs[i];
        if self.g.has_edge(a, b) {
            // A direct edge takes no interior vertices, so it is never worse
            // than any longer path.
            self.paths.push(vec![a, b]);
            if self.route(i + 1) {
                return true;
            }
            self.paths.pop();
            return false;
        }
        let mut path = vec![a];
        self.extend(i, &mut path, b)
    }

    fn extend(&mut self, i: usize, path: &mut Vec<Vertex>, target: Vertex) -> bool {
        let tail = *path.last().unwrap();
        for &x in self.g.neighbors(tail) {
            if x == target && path.len() >= 2 {
                path.push(x);
                self.paths.push(path.clone());
                if self.route(i + 1) {
                    return true;
                }
                self.paths.pop();
                path.pop();
            } else if self.free[x as usize] {
                self.free[x as usize] = false;
                path.push(x);
                if self.extend(i, path, target) {
                    return true;
                }
                path.pop();
                self.free[x as usize] = true;
            }
        }
        false
    }
}

fn try_branch(g: &Graph, kind: KuratowskiKind, branch: Vec<Vertex>) -> Option<KuratowskiWitness> {
    let mut free = vec![true; g.vertex_count()];
    for &b in &branch {
        free[b as usize] = false;
    }
    let mut router = Router {
        g,
        pairs: required_pairs(kind, &branch),
        free,
        paths: Vec::new(),
    };
    if router.route(0) {
        Some(KuratowskiWitness {
            kind,
            branch,
            paths: router.paths,
        })
    } else {
        None
    }
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<Vertex>> {
    (0u32..1 << n)
        .filter(move |mask| mask.count_ones() as usize == k)
        .map(move |mask| (0..n as Vertex).filter(|v| mask >> v & 1 == 1).collect())
}

/// Finds a `K5` or `K3,3` subdivision, or `None` when the graph is planar.
pub fn find_kuratowski_bruteforce(g: &Graph) -> Result<Option<KuratowskiWitness>, SearchBudgetExceeded> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(SearchBudgetExceeded {
            n,
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    for set in subsets(n, 5) {
        if set.iter().any(|&v| g.degree(v) < 4) {
            continue;
        }
        if let Some(w) = try_branch(g, KuratowskiKind::K5, set) {
            return Ok(Some(w));
        }
    }
    for set in subsets(n, 6) {
        if set.iter().any(|&v| g.degree(v) < 3) {
            continue;
        }
        // Sides {set[0], x, y} against the rest: each split counted once.
        for i in 1..6 {
            for j in i + 1..6 {
                let side: Vec<Vertex> = vec![set[0], set[i], set[j]];
                let other = set.iter().copied().filter(|v| !side.contains(v));
                let branch: Vec<Vertex> = side.iter().copied().chain(other).collect();
                if let Some(w) = try_branch(g, KuratowskiKind::K33, branch) {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, complete_graph, wheel_graph, Graph};

    #[test]
    fn k5_witness() {
        let g = complete_graph(5);
        let w = find_kuratowski_bruteforce(&g).unwrap().unwrap();
        assert_eq!(w.kind, KuratowskiKind::K5);
        assert!(w.verify(&g));
    }

    #[test]
    fn subdivided_k33_witness() {
        // K3,3 with the edge {0,3} replaced by the path 0-6-3.
        let base = complete_bipartite(3, 3);
        let mut edges: Vec<(u32, u32)> = base
            .edges()
            .iter()
            .map(|e| e.endpoints())
            .filter(|&e| e != (0, 3))
            .collect();
        edges.extend([(0, 6), (3, 6)]);
        let g = Graph::new(7, edges).unwrap();
        let w = find_kuratowski_bruteforce(&g).unwrap().unwrap();
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert!(w.verify(&g));
        assert!(w.paths.iter().any(|p| p.len() == 3 && p[1] == 6));
    }

    #[test]
    fn wheels_are_planar() {
        // Wheels on at most 8 vertices.
        for spokes in 3..=7 {
            assert_eq!(find_kuratowski_bruteforce(&wheel_graph(spokes)).unwrap(), None);
        }
    }

    #[test]
    fn budget() {
        assert!(find_kuratowski_bruteforce(&Graph::empty(9)).is_err());
    }
}
