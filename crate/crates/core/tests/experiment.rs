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

//! Sweep engine: agreement with exact counts, determinism, persistence.

use std::fs;

use num_traits::ToPrimitive;
use tippinglab::density::Density;
use tippinglab::exact::{count_property_exact, Decider, DEFAULT_ENUMERATION_BUDGET};
use tippinglab::experiment::{run_multi_sweep, run_sweep, run_sweep_to_file, ExperimentPlan, SweepError};
use tippinglab::recognize::Property;
use tippinglab::surface::{read_surface, write_surface, SurfaceError};

fn d(s: &str) -> Density {
    s.parse().unwrap()
}

fn plan(
    property: Property,
    ns: impl IntoIterator<Item = usize>,
    max: &str,
    step: &str,
    samples: u64,
) -> ExperimentPlan {
    ExperimentPlan {
        n_values: ns.into_iter().collect(),
        density_min: Density::ZERO,
        density_max: d(max),
        density_step: d(step),
        samples,
        seed: 7,
        ..ExperimentPlan::default_for(property)
    }
}

#[test]
fn small_sweeps_match_exact_fractions() {
    for property in [Property::Acyclic, Property::Planar] {
        let max = if property == Property::Acyclic { "1.0" } else { "3.0" };
        let p = plan(property, 1..=6, max, "0.05", 20_000);
        let surface = run_sweep(&p, 8).unwrap();
        for row in surface.measured() {
            let exact = count_property_exact(row.n, row.m, property, Decider::Recognizer, DEFAULT_ENUMERATION_BUDGET)
                .unwrap()
                .to_f64()
                .unwrap();
            let freq = row.frequency().unwrap();
            let sigma = (exact * (1.0 - exact) / row.samples as f64).sqrt();
            assert!(
                (freq - exact).abs() <= 3.0 * sigma,
                "{property} n={} d={}: frequency {freq} vs exact {exact} (3σ = {})",
                row.n,
                row.density,
                3.0 * sigma
            );
        }
        assert!(surface.skipped().count() > 0);
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let p = plan(Property::Planar, (10..=60).step_by(5), "1.5", "0.1", 200);
    let one = run_sweep(&p, 1).unwrap().to_csv();
    let four = run_sweep(&p, 4).unwrap().to_csv();
    let sixteen = run_sweep(&p, 16).unwrap().to_csv();
    assert_eq!(one, four);
    assert_eq!(one, sixteen);
}

#[test]
fn file_sweep_resumes_after_interruption() {
    let dir = tempfile::tempdir().unwrap();
    let p = plan(Property::Outerplanar, (3..=40).step_by(1), "2.0", "0.1", 40);
    let full_path = dir.path().join("full.csv");
    let full = run_sweep_to_file(&p, 3, &full_path, false).unwrap();
    let full_text = fs::read_to_string(&full_path).unwrap();
    assert_eq!(full_text, full.to_csv());
    assert_eq!(full, run_sweep(&p, 2).unwrap());

    // Tear the file mid-row, as a killed process would.
    let torn_path = dir.path().join("torn.csv");
    let cut = full_text.len() * 2 / 3;
    fs::write(&torn_path, &full_text[..cut]).unwrap();
    fs::copy(dir.path().join("full.plan.json"), dir.path().join("torn.plan.json")).unwrap();
    assert!(read_surface(&torn_path).is_err());
    let resumed = run_sweep_to_file(&p, 5, &torn_path, true).unwrap();
    assert_eq!(fs::read_to_string(&torn_path).unwrap(), full_text);
    assert_eq!(resumed, full);

    // A different plan refuses to resume over these rows.
    let mut other = p.clone();
    other.seed = 8;
    assert!(matches!(
        run_sweep_to_file(&other, 1, &torn_path, true),
        Err(SweepError::PlanMismatch(_))
    ));
}

#[test]
fn surface_round_trip_and_schema_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = plan(Property::NearPlanar, [4, 5, 6, 12], "3.0", "0.5", 30);
    let surface = run_sweep(&p, 2).unwrap();
    let path = dir.path().join("s.csv");
    write_surface(&path, &surface).unwrap();
    assert_eq!(read_surface(&path).unwrap(), surface);

    let text = fs::read_to_string(&path).unwrap().replacen("schema=1", "schema=9", 1);
    fs::write(&path, text).unwrap();
    assert!(matches!(read_surface(&path), Err(SurfaceError::SchemaMismatch { .. })));
}

#[test]
fn planar_frequency_is_non_increasing_up_to_noise() {
    let samples = 10_000u64;
    let p = ExperimentPlan {
        density_min: d("0.2"),
        ..plan(Property::Planar, [20, 60, 100], "1.5", "0.1", samples)
    };
    let surface = run_sweep(&p, 16).unwrap();
    let slack = 4.0 * (0.25 / samples as f64).sqrt();
    for pair in surface.rows.windows(2) {
        if pair[0].n != pair[1].n {
            continue;
        }
        let (a, b) = (pair[0].frequency().unwrap(), pair[1].frequency().unwrap());
        assert!(b <= a + slack, "n={} d={}: {a} -> {b}", pair[1].n, pair[1].density);
    }
}

#[test]
fn shared_graphs_respect_the_property_hierarchy() {
    let p = plan(Property::Planar, (5..=40).step_by(5), "3.0", "0.2", 100);
    let surfaces = run_multi_sweep(
        &p,
        &[
            Property::Acyclic,
            Property::Outerplanar,
            Property::Planar,
            Property::NearPlanar,
        ],
        8,
    )
    .unwrap();
    let [acyc, outer, planar, near] = &surfaces[..] else {
        unreachable!()
    };
    for i in 0..planar.rows.len() {
        let (a, o, p, q) = (&acyc.rows[i], &outer.rows[i], &planar.rows[i], &near.rows[i]);
        assert!(a.positives <= o.positives);
        assert!(o.positives <= p.positives);
        assert!(p.positives <= q.positives);
    }
    assert!(planar.plan.as_ref().unwrap().stream == "shared");
}
