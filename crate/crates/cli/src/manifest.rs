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

//! Run manifests: what was run, with which settings, and digests of every
//! file it produced.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use tippinglab::experiment::ExperimentPlan;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Serialize)]
pub struct Manifest {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    seed: u64,
    workers: usize,
    started: String,
    finished: Option<String>,
    plans: Vec<ExperimentPlan>,
    /// File name → lowercase hex SHA-256.
    outputs: BTreeMap<String, String>,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Manifest {
    pub fn start(command: &'static str, seed: u64, workers: usize) -> Self {
        Manifest {
            tool: "tippinglab",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            workers,
            started: now(),
            finished: None,
            plans: Vec::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn add_plan(&mut self, plan: &ExperimentPlan) {
        self.plans.push(plan.clone());
    }

    pub fn add_output(&mut self, path: &Path) -> Result<()> {
        let bytes = fs::read(path).with_context(|| format!("hashing {}", path.display()))?;
        let name = path
            .file_name()
            .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        self.outputs.insert(name, sha256_hex(&bytes));
        Ok(())
    }

    /// Stamps the end time and writes `manifest.json` into `dir`.
    pub fn finish(mut self, dir: &Path) -> Result<()> {
        self.finished = Some(now());
        let path = dir.join(MANIFEST_FILE);
        fs::write(&path, serde_json::to_string_pretty(&self)? + "\n")
            .with_context(|| format!("writing {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::sha256_hex;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
