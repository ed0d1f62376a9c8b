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

//! Left-right planarity test.
//!
//! This is the testing phase of the left-right criterion (de Fraysseix and
//! Rosenstiehl, in the formulation of Brandes, "The Left-Right Planarity
//! Test"). No embedding is built. Both depth-first passes are iterative so
//! deep DFS trees cannot overflow the call stack. Runs in `O(n + m)` after
//! sorting the outgoing edges by nesting depth.

use crate::graph::Graph;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<u32>,
    high: Option<u32>,
}

impl Interval {
    fn of(edge: u32) -> Self {
        Interval {
            low: Some(edge),
            high: Some(edge),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }

    fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

struct LrState {
    height: Vec<u32>,
    parent_edge: Vec<u32>,
    // Per undirected edge id, filled in by the orientation pass.
    src: Vec<u32>,
    dst: Vec<u32>,
    lowpt: Vec<u32>,
    lowpt2: Vec<u32>,
    nesting_depth: Vec<u32>,
    lowpt_edge: Vec<u32>,
    stack_bottom: Vec<usize>,
    reference: Vec<Option<u32>>,
    stack: Vec<ConflictPair>,
}

impl LrState {
    fn conflicting(&self, interval: &Interval, edge: u32) -> bool {
        match interval.high {
            Some(h) => self.lowpt[h as usize] > self.lowpt[edge as usize],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> u32 {
        let low = |i: &Interval| self.lowpt[i.low.expect("non-empty interval") as usize];
        if p.left.is_empty() {
            low(&p.right)
        } else if p.right.is_empty() {
            low(&p.left)
        } else {
            low(&p.left).min(low(&p.right))
        }
    }

    fn set_ref(&mut self, edge: Option<u32>, target: Option<u32>) {
        if let Some(e) = edge {
            self.reference[e as usize] = target;
        }
    }

    /// Merges the return edges of `ei` (a non-first outgoing edge of the
    /// tail of `e`) into the constraint stack. False means a conflict that
    /// no two-sided assignment can satisfy.
    fn add_constraints(&mut self, ei: u32, e: u32) -> bool {
        let mut p = ConflictPair::default();
        let bottom = self.stack_bottom[ei as usize];
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty right interval");
            if self.lowpt[q_low as usize] > self.lowpt[e as usize] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low as usize] = Some(self.lowpt_edge[e as usize]);
            }
            if self.stack.len() <= bottom {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !p.is_empty() {
            self.stack.push(p);
        }
        true
    }

    /// Drops back edges that end at the tail of tree edge `e` once its
    /// subtree is finished.
    fn remove_back_edges(&mut self, e: u32) {
        let u = self.src[e as usize];
        let hu = self.height[u as usize];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h as usize] != u {
                    break;
                }
                p.left.high = self.reference[h as usize];
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                self.set_ref(p.left.low, p.right.low);
                p.left.low = None;
            }
            while let Some(h) = p.right.high {
                if self.dst[h as usize] != u {
                    break;
                }
                p.right.high = self.reference[h as usize];
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                self.set_ref(p.right.low, p.left.low);
                p.right.low = None;
            }
            self.stack.push(p);
        }
        if self.lowpt[e as usize] < hu {
            if let Some(top) = self.stack.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                let pick = match (hl, hr) {
                    (Some(l), Some(r)) if self.lowpt[l as usize] > self.lowpt[r as usize] => hl,
                    (Some(_), None) => hl,
                    _ => hr,
                };
                self.reference[e as usize] = pick;
            }
        }
    }
}

/// Runs the left-right test on every connected component of `g`.
pub fn lr_planarity(g: &Graph) -> bool {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }

    // Adjacency carrying edge ids.
    let mut start = vec![0usize; n + 1];
    for e in g.edges() {
        start[e.low() as usize + 1] += 1;
        start[e.high() as usize + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut adj = vec![(0u32, 0u32); 2 * m];
    for (id, e) in g.edges().iter().enumerate() {
        let (a, b) = e.endpoints();
        adj[fill[a as usize]] = (b, id as u32);
        fill[a as usize] += 1;
        adj[fill[b as usize]] = (a, id as u32);
        fill[b as usize] += 1;
    }

    let mut st = LrState {
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        src: vec![NONE; m],
        dst: vec![NONE; m],
        lowpt: vec![0; m],
        lowpt2: vec![0; m],
        nesting_depth: vec![0; m],
        lowpt_edge: vec![NONE; m],
        stack_bottom: vec![0; m],
        reference: vec![None; m],
        stack: Vec::new(),
    };

    // Orientation pass.
    let mut roots = Vec::new();
    let mut pos = start[..n].to_vec();
    let mut dfs = Vec::new();
    for root in 0..n {
        if st.height[root] != NONE {
            continue;
        }
        st.height[root] = 0;
        roots.push(root as u32);
        dfs.push(root as u32);
        while let Some(&v) = dfs.last() {
            let vu = v as usize;
            let mut descended = false;
            while pos[vu] < start[vu + 1] {
                let (w, id) = adj[pos[vu]];
                let idu = id as usize;
                if st.src[idu] != NONE {
                    pos[vu] += 1;
                    continue;
                }
                st.src[idu] = v;
                st.dst[idu] = w;
                st.lowpt[idu] = st.height[vu];
                st.lowpt2[idu] = st.height[vu];
                if st.height[w as usize] == NONE {
                    st.parent_edge[w as usize] = id;
                    st.height[w as usize] = st.height[vu] + 1;
                    dfs.push(w);
                    descended = true;
                    break;
                }
                st.lowpt[idu] = st.height[w as usize];
                finish_oriented_edge(&mut st, v, id);
                pos[vu] += 1;
            }
            if descended {
                continue;
            }
            dfs.pop();
            let pe = st.parent_edge[vu];
            if pe != NONE {
                let parent = st.src[pe as usize];
                finish_oriented_edge(&mut st, parent, pe);
                pos[parent as usize] += 1;
            }
        }
    }

    // Outgoing edges in nesting order.
    let mut out_start = vec![0usize; n + 1];
    for id in 0..m {
        out_start[st.src[id] as usize + 1] += 1;
    }
    for i in 0..n {
        out_start[i + 1] += out_start[i];
    }
    let mut out_fill = out_start.clone();
    let mut out = vec![0u32; m];
    for id in 0..m {
        let s = st.src[id] as usize;
        out[out_fill[s]] = id as u32;
        out_fill[s] += 1;
    }
    for v in 0..n {
        out[out_start[v]..out_start[v + 1]].sort_by_key(|&id| st.nesting_depth[id as usize]);
    }

    // Testing pass.
    let mut pos = out_start[..n].to_vec();
    // Whether the edge at pos[v] has been entered (its subtree visited) already.
    let mut entered = vec![false; n];
    for &root in &roots {
        dfs.push(root);
        while let Some(&v) = dfs.last() {
            let vu = v as usize;
            let e = st.parent_edge[vu];
            let mut descended = false;
            while pos[vu] < out_start[vu + 1] {
                let ei = out[pos[vu]];
                let eiu = ei as usize;
                let w = st.dst[eiu];
                if !entered[vu] {
                    st.stack_bottom[eiu] = st.stack.len();
                    if st.parent_edge[w as usize] == ei {
                        entered[vu] = true;
                        dfs.push(w);
                        descended = true;
                        break;
                    }
                    st.lowpt_edge[eiu] = ei;
                    st.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval::of(ei),
                    });
                }
                entered[vu] = false;
                if st.lowpt[eiu] < st.height[vu] {
                    if pos[vu] == out_start[vu] {
                        st.lowpt_edge[e as usize] = st.lowpt_edge[eiu];
                    } else if !st.add_constraints(ei, e) {
                        return false;
                    }
                }
                pos[vu] += 1;
            }
            if descended {
                continue;
            }
            dfs.pop();
            if e != NONE {
                st.remove_back_edges(e);
            }
        }
    }
    true
}

/// Nesting depth of `vw` and the low-point update of the parent edge of `v`.
fn finish_oriented_edge(st: &mut LrState, v: u32, vw: u32) {
    let vwu = vw as usize;
    let mut depth = 2 * st.lowpt[vwu];
    if st.lowpt2[vwu] < st.height[v as usize] {
        depth += 1;
    }
    st.nesting_depth[vwu] = depth;
    let e = st.parent_edge[v as usize];
    if e == NONE {
        return;
    }
    let eu = e as usize;
    if st.lowpt[vwu] < st.lowpt[eu] {
        st.lowpt2[eu] = st.lowpt[eu].min(st.lowpt2[vwu]);
        st.lowpt[eu] = st.lowpt[vwu];
    } else if st.lowpt[vwu] > st.lowpt[eu] {
        st.lowpt2[eu] = st.lowpt2[eu].min(st.lowpt[vwu]);
    } else {
        st.lowpt2[eu] = st.lowpt2[eu].min(st.lowpt2[vwu]);
    }
}
