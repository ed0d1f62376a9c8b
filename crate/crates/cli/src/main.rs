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

//! `tippinglab` command-line tool.

mod manifest;

use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use tippinglab::analysis::{
    contour, fit_transition, psi, transition_width_limit, transition_width_ratio, zeta, ContourCurve, FitOptions,
    TransitionParams, ZetaParams, DEFAULT_INIT, MODEL_FORMULA,
};
use tippinglab::experiment::{run_sweep_to_file, ExperimentPlan, DESK_SAMPLES, FULL_SCALE_SAMPLES};
use tippinglab::surface::{read_surface, FrequencySurface};
use tippinglab::validation::{acyclic_probability_table, probability_table_csv, validate_acyclic, AcyclicValidation};
use tippinglab::{derive_cell_seed, edge_count, random_simple_graph, Density, Graph, Property, RngState};

use manifest::Manifest;

/// Environment variable naming the default output directory.
const CACHE_ENV: &str = "TIPPINGLAB_CACHE";
const DEFAULT_OUT_DIR: &str = "tippinglab-out";

#[derive(Parser)]
#[command(
    name = "tippinglab",
    version,
    about = "Phase transitions of graph properties in random graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a uniform random simple graph with n vertices and m edges.
    Gen(GenArgs),
    /// Decide a property for a graph read from a file or stdin.
    Test(TestArgs),
    /// Measure a property's frequency over an (n, density) grid.
    Sweep(SweepArgs),
    /// Exact reference values.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Extract a frequency contour from a surface CSV.
    Contour(ContourArgs),
    /// Fit 0.5 + c1/n^c2 + c3/n^(1/3) to a contour.
    Fit(FitArgs),
    /// Evaluate the analytical transition model.
    #[command(subcommand)]
    Model(ModelCommand),
    /// Compare an acyclicity surface with exact probabilities.
    ValidateAcyclic(ValidateArgs),
    /// Run all four sweeps plus validation, contours and fits.
    Repro(ReproArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// Edge count; give this or --density.
    #[arg(long, conflicts_with = "density", required_unless_present = "density")]
    m: Option<usize>,
    /// Density m/n; m is rounded half up.
    #[arg(long)]
    density: Option<Density>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stream tag; with a property tag and --sample this reproduces a sweep graph.
    #[arg(long, default_value = "gen")]
    stream: String,
    #[arg(long, default_value_t = 0)]
    sample: u64,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TestArgs {
    #[arg(long)]
    property: Property,
    /// Graph file ("n m" header, then one "u v" line per edge); stdin if absent or "-".
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Same as --in.
    #[arg(conflicts_with = "input", value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ScaleArgs {
    /// Samples per cell.
    #[arg(long, default_value_t = DESK_SAMPLES, conflicts_with = "full_scale")]
    samples: u64,
    /// Use the full 10,000 samples per cell.
    #[arg(long, visible_alias = "paper-scale")]
    full_scale: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the available CPUs. Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory; falls back to $TIPPINGLAB_CACHE, then ./tippinglab-out.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ScaleArgs {
    fn samples(&self) -> u64 {
        if self.full_scale {
            FULL_SCALE_SAMPLES
        } else {
            self.samples
        }
    }

    fn workers(&self) -> usize {
        resolve_workers(self.workers)
    }

    fn out_dir(&self) -> PathBuf {
        resolve_out_dir(self.out.clone())
    }
}

fn resolve_workers(requested: Option<usize>) -> usize {
    requested
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

/// `--out`, else `$TIPPINGLAB_CACHE`, else `./tippinglab-out`.
fn resolve_out_dir(out: Option<PathBuf>) -> PathBuf {
    out.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    property: Property,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    n_step: usize,
    #[arg(long)]
    d_min: Option<Density>,
    #[arg(long)]
    d_max: Option<Density>,
    #[arg(long)]
    d_step: Option<Density>,
    /// Keep rows already written by an identical plan and compute the rest.
    #[arg(long)]
    resume: bool,
    #[command(flatten)]
    scale: ScaleArgs,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exact probability that G(n, m) is a forest, along a density range.
    Acyclic {
        #[arg(long)]
        n: usize,
        #[arg(long = "dmin", alias = "d-min", default_value = "0")]
        d_min: Density,
        #[arg(long = "dmax", alias = "d-max", default_value = "1")]
        d_max: Density,
        #[arg(long = "step", alias = "d-step", default_value = "0.05")]
        d_step: Density,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ContourArgs {
    /// Surface CSV written by `sweep`.
    #[arg(long = "in", alias = "surface", value_name = "FILE")]
    surface: PathBuf,
    /// Frequency level in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    height: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// Contour CSV ("n,density").
    #[arg(
        long = "in",
        alias = "contour",
        value_name = "FILE",
        required_unless_present = "surface",
        conflicts_with = "surface"
    )]
    contour: Option<PathBuf>,
    /// Surface CSV; the contour at --height is extracted first.
    #[arg(long)]
    surface: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    height: f64,
    /// Starting point "c1,c2,c3".
    #[arg(long, value_parser = parse_triple)]
    init: Option<TransitionParams>,
    /// Ignore contour points below this n.
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    /// Write fit JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ZetaArgs {
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    c1: f64,
    #[arg(long, default_value_t = 0.5)]
    c2: f64,
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    c3: f64,
    #[arg(long, default_value_t = 0.5)]
    c4: f64,
}

impl ZetaArgs {
    fn params(&self) -> Result<ZetaParams> {
        ZetaParams::new(self.c1, self.c2, self.c3, self.c4).map_err(|e| usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Probability that the property holds at (n, d).
    Zeta {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        d: f64,
        #[command(flatten)]
        params: ZetaArgs,
    },
    /// Density at which the probability equals p.
    Psi {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        params: ZetaArgs,
    },
    /// Transition width ratio at n and its limit.
    Width {
        #[arg(long)]
        n: f64,
        #[arg(long, default_value_t = 0.1)]
        p_min: f64,
        #[arg(long, default_value_t = 0.9)]
        p_max: f64,
        #[command(flatten)]
        params: ZetaArgs,
    },
}

#[derive(Args)]
struct ValidateArgs {
    /// Acyclicity surface CSV; without it a sweep over n in {25, 50, 100, 200, 400}
    /// and densities 0..1 step 0.05 is run first and written to the output directory.
    #[arg(long = "in", alias = "surface", value_name = "FILE")]
    surface: Option<PathBuf>,
    /// Samples per cell for the computed surface.
    #[arg(long, default_value_t = 2_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory for the computed surface and report; falls back to
    /// $TIPPINGLAB_CACHE, then ./tippinglab-out.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproArgs {
    /// Cap every grid at this n (full grids go to 400, 200 for near-planarity).
    #[arg(long)]
    n_max: Option<usize>,
    #[command(flatten)]
    scale: ScaleArgs,
}

/// Marks errors caused by bad input rather than a failed computation.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parse_triple(s: &str) -> Result<TransitionParams, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [c1, c2, c3] => Ok(TransitionParams { c1, c2, c3 }),
        _ => Err("expected three comma-separated numbers".into()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_input(file: Option<&Path>) -> Result<String> {
    match file {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn cmd_gen(a: GenArgs) -> Result<()> {
    let m = match (a.m, a.density) {
        (Some(m), _) => m,
        (None, Some(d)) => edge_count(a.n, d).map_err(|e| usage(e.to_string()))?,
        (None, None) => unreachable!("clap requires one of --m and --density"),
    };
    let seed = derive_cell_seed(a.seed, a.n as u64, m as u64, &a.stream, a.sample);
    let g = random_simple_graph(a.n, m, &mut RngState::from_seed(seed)).map_err(|e| usage(e.to_string()))?;
    emit(&g.to_text(), a.out.as_deref())
}

fn cmd_test(a: TestArgs) -> Result<()> {
    let text = read_input(a.input.as_deref().or(a.file.as_deref()))?;
    let g = Graph::from_text(&text).map_err(|e| usage(format!("invalid graph: {e}")))?;
    if a.property == Property::NearPlanar {
        // Full test: the witness is wanted even for small graphs.
        let w = tippinglab::recognize::is_near_planar(&g);
        println!("{}", w.verdict);
        if let Some(e) = w.removed_edge {
            println!("witness {} {}", e.low(), e.high());
        }
    } else {
        println!("{}", a.property.holds(&g));
    }
    Ok(())
}

fn check_plan(plan: &ExperimentPlan) -> Result<()> {
    plan.validate().map_err(|e| usage(format!("invalid grid: {e}")))
}

fn surface_path(dir: &Path, property: Property) -> PathBuf {
    dir.join(format!("{}.csv", property.tag()))
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    let defaults = ExperimentPlan::default_for(a.property);
    let n_min = a.n_min.unwrap_or(*defaults.n_values.first().unwrap());
    let n_max = a.n_max.unwrap_or(*defaults.n_values.last().unwrap());
    if a.n_step == 0 || n_min == 0 || n_min > n_max {
        return Err(usage("need 1 <= --n-min <= --n-max and --n-step >= 1"));
    }
    let plan = ExperimentPlan {
        n_values: (n_min..=n_max).step_by(a.n_step).collect(),
        density_min: a.d_min.unwrap_or(defaults.density_min),
        density_max: a.d_max.unwrap_or(defaults.density_max),
        density_step: a.d_step.unwrap_or(defaults.density_step),
        samples: a.scale.samples(),
        seed: a.scale.seed,
        ..defaults
    };
    check_plan(&plan)?;
    let dir = a.scale.out_dir();
    let workers = a.scale.workers();
    let mut manifest = Manifest::start("sweep", a.scale.seed, workers);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let surface = sweep_into(&dir, &plan, workers, a.resume, &mut manifest)?;
    manifest.finish(&dir)?;
    println!(
        "{}: {} rows ({} skipped) -> {}",
        plan.property,
        surface.rows.len(),
        surface.skipped().count(),
        surface_path(&dir, plan.property).display()
    );
    Ok(())
}

fn cmd_oracle(c: OracleCommand) -> Result<()> {
    let OracleCommand::Acyclic {
        n,
        d_min,
        d_max,
        d_step,
        out,
    } = c;
    if n == 0 || d_step.micros() == 0 {
        return Err(usage("need --n >= 1 and a positive --step"));
    }
    let rows = acyclic_probability_table(n, d_min, d_max, d_step)?;
    emit(&probability_table_csv(&rows), out.as_deref())
}

fn load_surface(path: &Path) -> Result<FrequencySurface> {
    read_surface(path).with_context(|| format!("reading surface {}", path.display()))
}

fn cmd_contour(a: ContourArgs) -> Result<()> {
    let surface = load_surface(&a.surface)?;
    let curve = contour(&surface, a.height).map_err(|e| usage(e.to_string()))?;
    emit(&curve.to_csv(), a.out.as_deref())
}

#[derive(Serialize)]
struct FitReport {
    c1: f64,
    c2: f64,
    c3: f64,
    rss: f64,
    iterations: usize,
    converged: bool,
    model: &'static str,
    height: f64,
    points: usize,
    gradient_norm: f64,
}

fn fit_report(curve: &ContourCurve, init: TransitionParams, min_n: usize) -> Result<FitReport> {
    let opts = FitOptions {
        min_n,
        ..FitOptions::default()
    };
    let f = fit_transition(curve, init, &opts)?;
    Ok(FitReport {
        c1: f.c1,
        c2: f.c2,
        c3: f.c3,
        rss: f.rss,
        iterations: f.iterations,
        converged: f.converged,
        model: MODEL_FORMULA,
        height: curve.height,
        points: f.points,
        gradient_norm: f.gradient_norm,
    })
}

fn cmd_fit(a: FitArgs) -> Result<()> {
    let curve = match (&a.contour, &a.surface) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ContourCurve::from_csv(&text, a.height).map_err(|e| usage(e.to_string()))?
        }
        (None, Some(path)) => contour(&load_surface(path)?, a.height).map_err(|e| usage(e.to_string()))?,
        (None, None) => unreachable!("clap requires --contour or --surface"),
    };
    let report = fit_report(&curve, a.init.unwrap_or(DEFAULT_INIT), a.min_n)?;
    if !report.converged {
        eprintln!("warning: fit did not converge after {} iterations", report.iterations);
    }
    emit(&(serde_json::to_string_pretty(&report)? + "\n"), a.out.as_deref())
}

fn cmd_model(c: ModelCommand) -> Result<()> {
    match c {
        ModelCommand::Zeta { n, d, params } => println!("{}", zeta(n, d, &params.params()?)),
        ModelCommand::Psi { n, p, params } => {
            println!("{}", psi(n, p, &params.params()?).map_err(|e| usage(e.to_string()))?)
        }
        ModelCommand::Width {
            n,
            p_min,
            p_max,
            params,
        } => {
            let params = params.params()?;
            let ratio = transition_width_ratio(n, p_min, p_max, &params).map_err(|e| usage(e.to_string()))?;
            let limit = transition_width_limit(p_min, p_max, &params).map_err(|e| usage(e.to_string()))?;
            println!("ratio {ratio}\nlimit {limit}");
        }
    }
    Ok(())
}

/// Probes every property surface at these frequency levels in `repro`.
const REPRO_LEVELS: [(&str, f64); 3] = [("01", 0.01), ("50", 0.5), ("99", 0.99)];

fn write_validation(dir: &Path, v: &AcyclicValidation, manifest: Option<&mut Manifest>) -> Result<String> {
    let json = serde_json::to_string_pretty(v)? + "\n";
    let path = dir.join("acyclic_validation.json");
    write_file(&path, &json)?;
    if let Some(m) = manifest {
        m.add_output(&path)?;
    }
    Ok(json)
}

fn cmd_validate(a: ValidateArgs) -> Result<()> {
    if let Some(path) = &a.surface {
        let surface = load_surface(path)?;
        let v = validate_acyclic(&surface).map_err(|e| usage(e.to_string()))?;
        let json = match &a.out {
            Some(dir) => write_validation(dir, &v, None)?,
            None => serde_json::to_string_pretty(&v)? + "\n",
        };
        print!("{json}");
        return Ok(());
    }
    let plan = ExperimentPlan {
        n_values: vec![25, 50, 100, 200, 400],
        samples: a.samples,
        seed: a.seed,
        ..ExperimentPlan::default_for(Property::Acyclic)
    };
    check_plan(&plan)?;
    let dir = resolve_out_dir(a.out);
    let workers = resolve_workers(a.workers);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut manifest = Manifest::start("validate-acyclic", a.seed, workers);
    let surface = sweep_into(&dir, &plan, workers, false, &mut manifest)?;
    let v = validate_acyclic(&surface)?;
    print!("{}", write_validation(&dir, &v, Some(&mut manifest))?);
    manifest.finish(&dir)
}

/// Runs `plan` into `<dir>/<property>.csv` and records the outputs.
fn sweep_into(
    dir: &Path,
    plan: &ExperimentPlan,
    workers: usize,
    resume: bool,
    manifest: &mut Manifest,
) -> Result<FrequencySurface> {
    let csv = surface_path(dir, plan.property);
    eprintln!(
        "sweeping {} over {} cells ({} tests) with {workers} worker(s)",
        plan.property,
        plan.cells().len(),
        plan.total_tests()
    );
    let surface = run_sweep_to_file(plan, workers, &csv, resume)?;
    manifest.add_plan(plan);
    manifest.add_output(&csv)?;
    manifest.add_output(&tippinglab::surface::plan_path(&csv))?;
    Ok(surface)
}

/// One directory per experiment, each with its own manifest: the surface,
/// plus the exact-probability validation for acyclicity, or contours and
/// fits at the 1%, 50% and 99% levels for the other properties.
fn cmd_repro(a: ReproArgs) -> Result<()> {
    let root = a.scale.out_dir();
    let workers = a.scale.workers();
    for property in Property::ALL {
        let mut plan = ExperimentPlan {
            samples: a.scale.samples(),
            seed: a.scale.seed,
            ..ExperimentPlan::default_for(property)
        };
        if let Some(cap) = a.n_max {
            plan.n_values.retain(|&n| n <= cap);
        }
        check_plan(&plan)?;
        let dir = root.join(property.tag());
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut manifest = Manifest::start("repro", a.scale.seed, workers);
        let surface = sweep_into(&dir, &plan, workers, true, &mut manifest)?;

        if property == Property::Acyclic {
            let v = validate_acyclic(&surface)?;
            write_validation(&dir, &v, Some(&mut manifest))?;
            println!(
                "acyclic: mean |error| {:.5}, signed mean {:+.6} over {} cells",
                v.mean_abs_error, v.signed_mean_error, v.cells
            );
        } else {
            for (label, height) in REPRO_LEVELS {
                let curve = match contour(&surface, height) {
                    Ok(c) => c,
                    Err(e) => {
                        eprintln!("{property} contour at {height}: {e}");
                        continue;
                    }
                };
                let path = dir.join(format!("contour_{label}.csv"));
                write_file(&path, &curve.to_csv())?;
                manifest.add_output(&path)?;
                match fit_report(&curve, DEFAULT_INIT, 1) {
                    Ok(r) => {
                        println!(
                            "{property} {height}: d = 0.5 + {:.4}/n^{:.4} + {:.4}/n^(1/3) (rss {:.3e})",
                            r.c1, r.c2, r.c3, r.rss
                        );
                        let path = dir.join(format!("fit_{label}.json"));
                        write_file(&path, &(serde_json::to_string_pretty(&r)? + "\n"))?;
                        manifest.add_output(&path)?;
                    }
                    Err(e) => eprintln!("{property} fit at {height}: {e}"),
                }
            }
        }
        manifest.finish(&dir)?;
    }
    println!("results in {}", root.display());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Test(a) => cmd_test(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Oracle(c) => cmd_oracle(c),
        Command::Contour(a) => cmd_contour(a),
        Command::Fit(a) => cmd_fit(a),
        Command::Model(c) => cmd_model(c),
        Command::ValidateAcyclic(a) => cmd_validate(a),
        Command::Repro(a) => cmd_repro(a),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on its own usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
