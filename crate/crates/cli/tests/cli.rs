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

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tippinglab"));
    c.env_remove("TIPPINGLAB_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sweep_args<'a>(out: &'a str, workers: &'a str) -> Vec<&'a str> {
    vec![
        "sweep",
        "--property",
        "planar",
        "--n-min",
        "10",
        "--n-max",
        "40",
        "--n-step",
        "10",
        "--d-min",
        "0.5",
        "--d-max",
        "2.5",
        "--d-step",
        "0.25",
        "--samples",
        "40",
        "--seed",
        "11",
        "--workers",
        workers,
        "--out",
        out,
    ]
}

#[test]
fn gen_is_reproducible_and_matches_requested_size() {
    let a = run(&["gen", "--n", "30", "--density", "1.25", "--seed", "5"]);
    let b = run(&["gen", "--n", "30", "--density", "1.25", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("30 38\n"), "{text}");
    assert_eq!(text.lines().count(), 39);
    let c = run(&["gen", "--n", "30", "--density", "1.25", "--seed", "6"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gen_rejects_infeasible_density() {
    let o = run(&["gen", "--n", "4", "--density", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn test_reports_verdicts_and_witness() {
    let k5 = stdout(&run(&["gen", "--n", "5", "--m", "10"]));
    let o = run_with_stdin(&["test", "--property", "planar"], &k5);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "false\n");
    assert_eq!(
        stdout(&run_with_stdin(&["test", "--property", "acyclic", "-"], &k5)),
        "false\n"
    );
    let near = stdout(&run_with_stdin(&["test", "--property", "nearplanar"], &k5));
    let lines: Vec<&str> = near.lines().collect();
    assert_eq!(lines[0], "true");
    let witness: Vec<u32> = lines[1]
        .strip_prefix("witness ")
        .unwrap()
        .split(' ')
        .map(|t| t.parse().unwrap())
        .collect();
    assert!(witness[0] < witness[1] && witness[1] < 5);

    let path_graph = "4 3\n0 1\n1 2\n2 3\n";
    for p in ["acyclic", "planar", "outerplanar", "nearplanar"] {
        assert_eq!(
            stdout(&run_with_stdin(&["test", "--property", p], path_graph)),
            "true\n"
        );
    }

    let dir = tempfile::tempdir().unwrap();
    let k33 = dir.path().join("k33.txt");
    fs::write(&k33, "6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n").unwrap();
    let path = k33.to_str().unwrap();
    assert_eq!(stdout(&run(&["test", "--property", "planar", "--in", path])), "false\n");
    assert_eq!(stdout(&run(&["test", "--property", "planar", path])), "false\n");
}

#[test]
fn test_exits_2_on_malformed_graph() {
    for bad in ["3 1\n0 0\n", "3 2\n0 1\n0 1\n", "2 1\n0 5\n", "garbage"] {
        let o = run_with_stdin(&["test", "--property", "planar"], bad);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["sweep", "--property", "treelike"]).status.code(), Some(2));
    assert_eq!(run(&["model", "psi", "--n", "10", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_1() {
    let o = run(&["contour", "--surface", "/nonexistent/surface.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_output_is_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut csvs = Vec::new();
    for w in ["1", "3", "8"] {
        let out = dir.path().join(format!("w{w}"));
        let o = run(&sweep_args(out.to_str().unwrap(), w));
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        csvs.push(fs::read(out.join("planar.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    assert_eq!(csvs[0], csvs[2]);
}

#[test]
fn sweep_writes_manifest_with_digests() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(run(&sweep_args(out, "2")).status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 11);
    assert_eq!(manifest["workers"], 2);
    assert_eq!(manifest["plans"][0]["property"], "planar");
    assert!(manifest["started"].as_str().unwrap() <= manifest["finished"].as_str().unwrap());
    let digest = manifest["outputs"]["planar.csv"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    assert!(digest.bytes().all(|b| b.is_ascii_hexdigit() && !b.is_ascii_uppercase()));
    assert!(manifest["outputs"]["planar.plan.json"].is_string());
}

#[test]
fn output_directory_falls_back_to_cache_env() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["sweep", "--property", "acyclic", "--n-max", "8", "--samples", "5"])
        .env("TIPPINGLAB_CACHE", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("acyclic.csv").exists());

    let explicit = dir.path().join("explicit");
    let o = bin()
        .args([
            "sweep",
            "--property",
            "acyclic",
            "--n-max",
            "8",
            "--samples",
            "5",
            "--out",
        ])
        .arg(&explicit)
        .env("TIPPINGLAB_CACHE", dir.path().join("unused"))
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(explicit.join("acyclic.csv").exists());
    assert!(!dir.path().join("unused").exists());
}

#[test]
fn resume_completes_a_truncated_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(run(&sweep_args(out, "1")).status.success());
    let csv = dir.path().join("planar.csv");
    let full = fs::read_to_string(&csv).unwrap();
    // Keep a few rows plus half of the next one.
    let cut = full.match_indices('\n').nth(6).unwrap().0 + 8;
    fs::write(&csv, &full[..cut]).unwrap();
    let mut args = sweep_args(out, "1");
    args.push("--resume");
    assert!(run(&args).status.success());
    assert_eq!(fs::read_to_string(&csv).unwrap(), full);
}

#[test]
fn resume_refuses_a_different_plan() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(run(&sweep_args(out, "1")).status.success());
    let mut args = sweep_args(out, "1");
    let seed = args.iter().position(|&a| a == "11").unwrap();
    args[seed] = "12";
    args.push("--resume");
    assert_eq!(run(&args).status.code(), Some(1));
}

#[test]
fn oracle_acyclic_matches_known_values() {
    let expected = "n,density,m,probability\n4,0.75,3,0.8\n4,1.0,4,0\n";
    let o = run(&[
        "oracle", "acyclic", "--n", "4", "--dmin", "0.75", "--dmax", "1", "--step", "0.25",
    ]);
    assert_eq!(stdout(&o), expected);
    let o = run(&[
        "oracle", "acyclic", "--n", "4", "--d-min", "0.75", "--d-max", "1", "--d-step", "0.25",
    ]);
    assert_eq!(stdout(&o), expected);
}

#[test]
fn contour_fit_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&[
        "sweep",
        "--property",
        "planar",
        "--n-min",
        "20",
        "--n-max",
        "240",
        "--n-step",
        "20",
        "--d-min",
        "0.4",
        "--d-max",
        "1.6",
        "--d-step",
        "0.05",
        "--samples",
        "60",
        "--out",
        out,
    ]);
    assert!(o.status.success());
    let surface = dir.path().join("planar.csv");
    let contour_csv = dir.path().join("c50.csv");
    let o = run(&[
        "contour",
        "--in",
        surface.to_str().unwrap(),
        "--height",
        "0.5",
        "--out",
        contour_csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&contour_csv).unwrap();
    assert!(text.starts_with("n,density\n"));
    assert_eq!(text.lines().count(), 13);

    let fit_json = dir.path().join("fit.json");
    let o = run(&[
        "fit",
        "--in",
        contour_csv.to_str().unwrap(),
        "--out",
        fit_json.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let fit: serde_json::Value = serde_json::from_str(&fs::read_to_string(&fit_json).unwrap()).unwrap();
    for key in ["c1", "c2", "c3", "rss", "iterations", "converged", "model"] {
        assert!(!fit[key].is_null(), "missing {key}");
    }
    assert_eq!(fit["converged"], true);
    // 50% density at n = 200 lands near 0.77.
    let c = |k: &str| fit[k].as_f64().unwrap();
    let at200 = 0.5 + c("c1") / 200f64.powf(c("c2")) + c("c3") / 200f64.cbrt();
    assert!((at200 - 0.765).abs() < 0.05, "{at200}");

    let direct = run(&["fit", "--surface", surface.to_str().unwrap()]);
    let direct: serde_json::Value = serde_json::from_slice(&direct.stdout).unwrap();
    assert_eq!(direct["c1"], fit["c1"]);
    let alias = run(&["fit", "--contour", contour_csv.to_str().unwrap()]);
    let alias: serde_json::Value = serde_json::from_slice(&alias.stdout).unwrap();
    assert_eq!(alias["c1"], fit["c1"]);
}

#[test]
fn model_commands() {
    assert_eq!(stdout(&run(&["model", "zeta", "--n", "100", "--d", "1.0"])), "0.5\n");
    let psi: f64 = stdout(&run(&["model", "psi", "--n", "10000", "--p", "0.5"]))
        .trim()
        .parse()
        .unwrap();
    assert!((psi - 0.55).abs() < 1e-12);
    let width = stdout(&run(&["model", "width", "--n", "1e12", "--c1", "10", "--c3", "1"]));
    let nums: Vec<f64> = width
        .lines()
        .map(|l| l.split(' ').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(((nums[0] - nums[1]) / nums[1]).abs() < 1e-3);
}

#[test]
fn validate_acyclic_reports_small_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&[
        "sweep",
        "--property",
        "acyclic",
        "--n-min",
        "10",
        "--n-max",
        "50",
        "--n-step",
        "10",
        "--samples",
        "400",
        "--out",
        out,
    ]);
    assert!(o.status.success());
    let surface = dir.path().join("acyclic.csv");
    let o = run(&["validate-acyclic", "--in", surface.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cells"], 105);
    assert!(v["mean_abs_error"].as_f64().unwrap() < 0.02);

    let planar = dir.path().join("p");
    assert!(run(&[
        "sweep",
        "--property",
        "planar",
        "--n-max",
        "5",
        "--samples",
        "3",
        "--out",
        planar.to_str().unwrap()
    ])
    .status
    .success());
    let o = run(&[
        "validate-acyclic",
        "--surface",
        planar.join("planar.csv").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_acyclic_computes_its_own_surface() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "validate-acyclic",
        "--samples",
        "100",
        "--seed",
        "4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cells"], 105);
    assert!(v["mean_abs_error"].as_f64().unwrap() < 0.03);
    for name in [
        "acyclic.csv",
        "acyclic.plan.json",
        "acyclic_validation.json",
        "manifest.json",
    ] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

#[test]
fn repro_produces_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "repro",
        "--n-max",
        "60",
        "--samples",
        "20",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for property in ["acyclic", "planar", "outerplanar", "nearplanar"] {
        let sub = dir.path().join(property);
        let manifest: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(sub.join("manifest.json")).unwrap()).unwrap();
        assert_eq!(manifest["plans"].as_array().unwrap().len(), 1);
        assert_eq!(manifest["plans"][0]["property"], property);
        let csv = format!("{property}.csv");
        assert!(manifest["outputs"][csv.as_str()].is_string(), "{property}");
        // Every listed digest matches the file on disk.
        for (name, digest) in manifest["outputs"].as_object().unwrap() {
            let bytes = fs::read(sub.join(name)).unwrap();
            assert_eq!(digest.as_str().unwrap(), sha256_hex(&bytes), "{property}/{name}");
        }
    }
    assert!(dir.path().join("acyclic/acyclic_validation.json").exists());
    assert!(dir.path().join("planar/contour_50.csv").exists());
    assert!(dir.path().join("planar/fit_50.json").exists());
}

#[test]
fn repeated_runs_give_identical_digests() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for sub in ["a", "b"] {
        let out = dir.path().join(sub);
        let o = run(&[
            "sweep",
            "--property",
            "planar",
            "--samples",
            "100",
            "--n-max",
            "50",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let m: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
        outputs.push(m["outputs"].clone());
    }
    assert_eq!(outputs[0], outputs[1]);
}

fn sha256_hex(bytes: &[u8]) -> String {
    // Independent digest from the system tool.
    let mut child = Command::new("sha256sum")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(bytes).unwrap();
    let out = child.wait_with_output().unwrap();
    String::from_utf8(out.stdout)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .to_string()
}
