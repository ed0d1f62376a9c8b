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

//! Uniformity and reproducibility of the G(n, m) generator.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use tippinglab::exact::binomial;
use tippinglab::graph::{max_edges, Edge, Graph};
use tippinglab::random::{derive_cell_seed, random_simple_graph, RngState};

fn tally(n: usize, m: usize, draws: u64, seed: u64) -> HashMap<Vec<Edge>, u64> {
    let mut rng = RngState::from_seed(seed);
    let mut counts = HashMap::new();
    for _ in 0..draws {
        let g = random_simple_graph(n, m, &mut rng).unwrap();
        *counts.entry(g.edges().to_vec()).or_insert(0) += 1;
    }
    counts
}

#[test]
fn four_vertices_two_edges_is_uniform() {
    let draws = 200_000u64;
    let counts = tally(4, 2, draws, 17);
    assert_eq!(counts.len(), 15);
    let p = 1.0 / 15.0;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    for (edges, &c) in &counts {
        let dev = (c as f64 - draws as f64 * p).abs();
        assert!(
            dev <= 3.0 * sigma,
            "{edges:?}: {c} draws, {dev:.1} > 3σ = {:.1}",
            3.0 * sigma
        );
    }
}

#[test]
fn chi_square_on_every_small_support() {
    let draws = 100_000u64;
    let mut tested = 0;
    for n in 1..=6usize {
        for m in 0..=max_edges(n) {
            let support = binomial(max_edges(n) as u64, m as u64).to_u64().unwrap();
            if !(2..=50).contains(&support) {
                continue;
            }
            let counts = tally(n, m, draws, 1000 + (n * 100 + m) as u64);
            assert_eq!(counts.len() as u64, support, "n={n} m={m}");
            let expected = draws as f64 / support as f64;
            let stat: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
            let critical = ChiSquared::new((support - 1) as f64).unwrap().inverse_cdf(1.0 - 1e-3);
            assert!(stat < critical, "n={n} m={m}: χ² = {stat:.2} ≥ {critical:.2}");
            tested += 1;
        }
    }
    assert!(tested >= 8, "only {tested} (n, m) pairs tested");
}

#[test]
fn golden_seeds() {
    // Independently recomputed from the documented SplitMix64/FNV-1a mix.
    assert_eq!(derive_cell_seed(1, 10, 5, "planar", 0), 0x3382_a37c_25e8_54a5);
    assert_eq!(derive_cell_seed(1, 10, 5, "planar", 1), 0x320e_787c_02b0_cc2b);
    assert_eq!(derive_cell_seed(42, 200, 120, "acyclic", 9999), 0x2d2d_ad95_0d54_291a);
}

#[test]
fn golden_graph() {
    let mut rng = RngState::from_seed(derive_cell_seed(1, 10, 5, "planar", 0));
    let g = random_simple_graph(10, 5, &mut rng).unwrap();
    let expected = Graph::new(10, [(0, 7), (0, 9), (1, 6), (1, 9), (5, 8)]).unwrap();
    assert_eq!(g, expected);
}

proptest! {
    #[test]
    fn generated_graphs_are_simple(n in 1usize..60, frac in 0.0f64..=1.0, seed: u64) {
        let m = (max_edges(n) as f64 * frac).floor() as usize;
        let mut rng = RngState::from_seed(seed);
        let g = random_simple_graph(n, m, &mut rng).unwrap();
        prop_assert_eq!(g.vertex_count(), n);
        prop_assert_eq!(g.edge_count(), m);
        prop_assert!(g.validate().is_ok());
    }

    #[test]
    fn generation_is_a_function_of_the_seed(n in 2usize..40, seed: u64) {
        let m = max_edges(n) / 3;
        let a = random_simple_graph(n, m, &mut RngState::from_seed(seed)).unwrap();
        let b = random_simple_graph(n, m, &mut RngState::from_seed(seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}
