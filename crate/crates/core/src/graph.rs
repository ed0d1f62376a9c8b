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

//! Simple undirected labeled graphs.
//!
//! Vertices are the labels `0..n`. Edges are stored with their endpoints
//! ordered (`u < v`) and the edge list is kept sorted, so two graphs with the
//! same edge set compare equal regardless of how they were built.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = u32;

/// An unordered vertex pair stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Normalizes the endpoint order. Loops are not rejected here; `Graph::new`
    /// does that.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn low(&self) -> Vertex {
        self.u
    }

    pub fn high(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((a, b): (Vertex, Vertex)) -> Self {
        Edge::new(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {{{u}, {v}}} has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Number of unordered pairs on `n` vertices.
pub fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An immutable simple graph with a CSR adjacency index.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    neighbors: Vec<Vertex>,
}

impl Graph {
    /// Validates and builds a graph. Rejects loops, repeated pairs and
    /// endpoints `>= n`, naming the offending pair.
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<(Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for e in edges {
            let (a, b) = e.into();
            if a as usize >= n || b as usize >= n {
                return Err(GraphError::EndpointOutOfRange { u: a, v: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push(Edge::new(a, b));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
        }
        Ok(Self::from_sorted_unchecked(n, list))
    }

    /// Builds a graph from a strictly increasing list of valid edges.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.u < e.v && (e.v as usize) < n));
        let mut degree = vec![0usize; n + 1];
        for e in &edges {
            degree[e.u as usize + 1] += 1;
            degree[e.v as usize + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut fill = offsets.clone();
        let mut neighbors = vec![0; 2 * edges.len()];
        for e in &edges {
            neighbors[fill[e.u as usize]] = e.v;
            fill[e.u as usize] += 1;
            neighbors[fill[e.v as usize]] = e.u;
            fill[e.v as usize] += 1;
        }
        Graph {
            n,
            edges,
            offsets,
            neighbors,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (sorted) order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.edges.binary_search(&Edge::new(a, b)).is_ok()
    }

    /// Edge density `m / n` (0 for the empty vertex set).
    pub fn density(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.edges.len() as f64 / self.n as f64
        }
    }

    /// Re-checks the structural invariants.
    pub fn validate(&self) -> Result<(), GraphError> {
        Graph::new(self.n, self.edges.iter().map(|e| e.endpoints())).map(|_| ())
    }

    /// The same graph with `extra` edges added.
    pub fn with_edges<I>(&self, extra: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let all = self.edges.iter().copied().chain(extra).map(|e| e.endpoints());
        Graph::new(self.n, all)
    }

    /// The same graph with one edge removed. The edge must be present.
    pub fn without_edge(&self, edge: Edge) -> Graph {
        let edges: Vec<Edge> = self.edges.iter().copied().filter(|e| *e != edge).collect();
        debug_assert_eq!(edges.len() + 1, self.edges.len());
        Graph::from_sorted_unchecked(self.n, edges)
    }

    /// Adds one vertex (label `n`) adjacent to every existing vertex.
    pub fn with_apex(&self) -> Graph {
        let apex = self.n as Vertex;
        let mut edges = self.edges.clone();
        edges.extend((0..apex).map(|v| Edge { u: v, v: apex }));
        // Edges to the apex sort after every edge whose high end is below it,
        // but may interleave on the low end; sort to restore the order.
        edges.sort_unstable();
        Graph::from_sorted_unchecked(self.n + 1, edges)
    }

    /// Serializes to the text format: `"n m"` then one `"u v"` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            message: "missing header \"n m\"".into(),
        })?;
        let (n, m) = parse_pair::<usize>(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines.by_ref() {
            edges.push(parse_pair::<Vertex>(line, l)?);
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: 1,
                message: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }
}

fn parse_pair<T: FromStr>(line: usize, text: &str) -> Result<(T, T), GraphError> {
    let bad = || GraphError::Parse {
        line,
        message: format!("expected two non-negative integers, got {text:?}"),
    };
    let mut it = text.split_ascii_whitespace();
    let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges.iter().map(|e| (e.u, e.v)).collect::<Vec<_>>())
            .finish()
    }
}

/// Connected-component labels, numbered in order of each component's
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    ids: Vec<u32>,
    count: usize,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn id(&self, v: Vertex) -> u32 {
        self.ids[v as usize]
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    /// Smallest vertex of every component, indexed by component id.
    pub fn representatives(&self) -> Vec<Vertex> {
        let mut reps = Vec::with_capacity(self.count);
        for (v, &id) in self.ids.iter().enumerate() {
            if id as usize == reps.len() {
                reps.push(v as Vertex);
            }
        }
        reps
    }
}

pub fn connected_components(g: &Graph) -> ComponentPartition {
    const UNSEEN: u32 = u32::MAX;
    let mut ids = vec![UNSEEN; g.vertex_count()];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..g.vertex_count() {
        if ids[start] != UNSEEN {
            continue;
        }
        ids[start] = count;
        stack.push(start as Vertex);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if ids[w as usize] == UNSEEN {
                    ids[w as usize] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    ComponentPartition {
        ids,
        count: count as usize,
    }
}

/// Joins the components into one by chaining their smallest-label
/// representatives. Returns the new graph and the number of edges added,
/// which is always `components - 1` (or 0 for the empty graph).
pub fn make_connected(g: &Graph) -> (Graph, usize) {
    let reps = connected_components(g).representatives();
    if reps.len() <= 1 {
        return (g.clone(), 0);
    }
    let added: Vec<Edge> = reps.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    let count = added.len();
    let mut edges = g.edges.clone();
    edges.extend(added);
    edges.sort_unstable();
    (Graph::from_sorted_unchecked(g.n, edges), count)
}

pub fn complete_graph(k: usize) -> Graph {
    let mut edges = Vec::with_capacity(max_edges(k));
    for u in 0..k as Vertex {
        for v in u + 1..k as Vertex {
            edges.push(Edge { u, v });
        }
    }
    Graph::from_sorted_unchecked(k, edges)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a as Vertex {
        for v in a as Vertex..(a + b) as Vertex {
            edges.push(Edge { u, v });
        }
    }
    Graph::from_sorted_unchecked(a + b, edges)
}

pub fn cycle_graph(k: usize) -> Graph {
    let edges = (0..k as Vertex).map(|v| (v, (v + 1) % k as Vertex));
    Graph::new(k, edges).expect("cycle needs at least 3 vertices")
}

pub fn path_graph(k: usize) -> Graph {
    let edges = (1..k as Vertex).map(|v| (v - 1, v));
    Graph::new(k, edges).expect("valid path")
}

/// Wheel with hub `0` and rim `1..=spokes`.
pub fn wheel_graph(spokes: usize) -> Graph {
    let s = spokes as Vertex;
    let rim = (1..=s).map(|v| (v, v % s + 1));
    let hub = (1..=s).map(|v| (0, v));
    Graph::new(spokes + 1, hub.chain(rim)).expect("wheel needs at least 3 spokes")
}
