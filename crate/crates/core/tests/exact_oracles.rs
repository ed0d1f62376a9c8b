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

//! Moon's formula and the exact acyclicity probability against enumeration.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use tippinglab::exact::{
    acyclic_probability, binomial, count_property_exact, enumerate_graphs, labeled_forest_count, Decider,
    DEFAULT_ENUMERATION_BUDGET,
};
use tippinglab::graph::{connected_components, max_edges};
use tippinglab::recognize::{is_acyclic, Property};

const BUDGET: u64 = DEFAULT_ENUMERATION_BUDGET;

#[test]
fn forest_totals_match_enumeration() {
    for n in 1..=6usize {
        let moon: BigUint = (1..=n).map(|k| labeled_forest_count(n, k).unwrap()).sum();
        let mut enumerated = 0u64;
        for m in 0..=max_edges(n) {
            enumerate_graphs(n, m, BUDGET, |g| enumerated += is_acyclic(g) as u64).unwrap();
        }
        assert_eq!(moon, BigUint::from(enumerated), "n={n}");
    }
}

#[test]
fn forest_counts_by_component_match_enumeration() {
    for n in 1..=6usize {
        for k in 1..=n {
            let m = n - k;
            let mut count = 0u64;
            enumerate_graphs(n, m, BUDGET, |g| {
                if is_acyclic(g) {
                    assert_eq!(connected_components(g).count(), k);
                    count += 1;
                }
            })
            .unwrap();
            assert_eq!(labeled_forest_count(n, k).unwrap(), BigUint::from(count), "n={n} k={k}");
        }
    }
}

#[test]
fn acyclic_probability_matches_enumeration() {
    for n in 1..=6usize {
        for m in 0..=max_edges(n) {
            let exact = acyclic_probability(n, m).unwrap();
            let counted = count_property_exact(n, m, Property::Acyclic, Decider::Recognizer, BUDGET).unwrap();
            assert_eq!(exact, counted, "n={n} m={m}");
        }
    }
    assert_eq!(acyclic_probability(4, 3).unwrap(), BigRational::new(4.into(), 5.into()));
}

#[test]
fn acyclic_probability_is_monotone_and_bounded() {
    for n in 1..=50usize {
        let mut prev = BigRational::one();
        for m in 0..=max_edges(n) {
            let p = acyclic_probability(n, m).unwrap();
            assert!(p >= BigRational::zero() && p <= BigRational::one());
            assert!(p <= prev, "n={n} m={m}");
            prev = p;
        }
    }
}

#[test]
fn large_n_probabilities_are_exact_rationals() {
    // Terms exceed 10^900 here; the ratio must still land in [0, 1].
    for m in [1usize, 100, 200, 300, 399] {
        let p = acyclic_probability(400, m).unwrap();
        assert!(p > BigRational::zero() && p <= BigRational::one(), "m={m}");
    }
    assert_eq!(labeled_forest_count(400, 1).unwrap(), BigUint::from(400u32).pow(398));
}

#[test]
fn planar_fraction_by_two_oracles() {
    let lr = count_property_exact(5, 9, Property::Planar, Decider::Recognizer, BUDGET).unwrap();
    let kur = count_property_exact(5, 9, Property::Planar, Decider::Kuratowski, BUDGET).unwrap();
    assert_eq!(lr, kur);
    // Only K5 is non-planar on 5 vertices, and it has 10 edges.
    assert_eq!(lr, BigRational::one());
    let lr = count_property_exact(6, 10, Property::Planar, Decider::Recognizer, BUDGET).unwrap();
    let kur = count_property_exact(6, 10, Property::Planar, Decider::Kuratowski, BUDGET).unwrap();
    assert_eq!(lr, kur);
    assert!(lr < BigRational::one());
}

#[test]
fn edgeless_graphs_have_every_property() {
    for n in 1..=7usize {
        for p in Property::ALL {
            let f = count_property_exact(n, 0, p, Decider::Recognizer, BUDGET).unwrap();
            assert_eq!(f, BigRational::one());
        }
    }
}

#[test]
fn trees_by_enumeration_match_cayley() {
    for n in 2..=6usize {
        let mut trees = 0u64;
        enumerate_graphs(n, n - 1, BUDGET, |g| trees += is_acyclic(g) as u64).unwrap();
        assert_eq!(trees, (n as u64).pow(n as u32 - 2));
        assert_eq!(binomial(max_edges(n) as u64, 1), BigUint::from(max_edges(n)));
    }
}
