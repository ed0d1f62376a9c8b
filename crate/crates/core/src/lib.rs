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

//! Measurement and modeling of density-driven phase transitions of
//! planarity, outerplanarity, near-planarity and acyclicity in uniform
//! random labeled graphs `G(n, m)`.

pub mod analysis;
pub mod density;
pub mod exact;
pub mod experiment;
pub mod graph;
pub mod random;
pub mod recognize;
pub mod surface;
mod unionfind;
pub mod validation;

pub use density::{edge_count, round_half_up, Density};
pub use graph::{connected_components, make_connected, ComponentPartition, Edge, Graph, GraphError};
pub use random::{derive_cell_seed, random_simple_graph, RngState};
pub use recognize::Property;
