//! Batch experiments: one template cube, many seeds, a list of operations.
//!
//! ```json
//! {
//!   "template": { "model": "duplicube", "n": 8 },
//!   "seeds": [1, 2, 3],
//!   "operations": [{ "op": "diameter" }, { "op": "moments", "kmax": 6 }],
//!   "output_dir": "out",
//!   "threads": 2
//! }
//! ```
//!
//! Every (seed, operation) pair is an independent task. Results are merged
//! in (seed, operation) order and written to `output_dir/results.csv`, so
//! the file does not depend on the thread count.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use twistcube_core::metrics::{
    diameter_bounds, diameter_exact, expansion_probe, greedy_route, matching_cut_search, mixing_profile,
    partial_order_build, second_neighborhood,
};
use twistcube_core::spectral::{cycle_count, empirical_histogram, top_eigenvalues, walk_moments};
use twistcube_core::symmetry::automorphisms;
use twistcube_core::{build_cube, Graph, Guard, StreamKey, TwistedCube, Vertex};

use crate::error::{CliError, Result};
use crate::manifest::Manifest;
use crate::output::{results_csv, ResultRow};

/// Stream tag for the random pairs of the routing operation.
const ROUTE_TAG: u32 = 0x7a00_0001;
/// Stream tag mixed into the expansion probe seed.
const PROBE_TAG: u32 = 0x7a00_0002;

fn default_samples() -> usize {
    64
}
fn default_pairs() -> usize {
    1000
}
fn default_top() -> usize {
    2
}
fn default_kmax() -> u32 {
    6
}
fn default_cycle_len() -> u32 {
    4
}
fn default_bins() -> usize {
    0
}
fn default_eta() -> f64 {
    0.25
}
fn default_alpha() -> f64 {
    0.1
}
fn default_trials() -> usize {
    200
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Operation {
    Info,
    Diameter {
        #[serde(default)]
        exact: bool,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    Route {
        #[serde(default = "default_pairs")]
        pairs: usize,
    },
    TopEigenvalues {
        #[serde(default = "default_top")]
        count: usize,
    },
    Spectrum {
        /// Histogram bins; 0 picks `degree + 1`.
        #[serde(default = "default_bins")]
        bins: usize,
    },
    Moments {
        #[serde(default = "default_kmax")]
        kmax: u32,
    },
    Cycles {
        #[serde(default = "default_cycle_len")]
        k: u32,
    },
    SecondNeighborhood,
    Expansion {
        #[serde(default = "default_eta")]
        eta: f64,
        #[serde(default = "default_alpha")]
        alpha: f64,
        #[serde(default = "default_trials")]
        trials: usize,
    },
    Automorphisms,
    MatchingCuts,
    Order,
    Mixing {
        #[serde(default)]
        t_max: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentPlan {
    /// Cube recipe; its seed is replaced by each entry of `seeds`.
    pub template: Manifest,
    pub seeds: Vec<u64>,
    pub operations: Vec<Operation>,
    /// Relative paths are taken relative to the plan file.
    pub output_dir: PathBuf,
    #[serde(default)]
    pub threads: Option<usize>,
}

impl ExperimentPlan {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut plan: ExperimentPlan = serde_json::from_str(&text)
            .map_err(|source| CliError::Parse { what: "plan", path: path.into(), source })?;
        if plan.output_dir.is_relative() {
            if let Some(dir) = path.parent() {
                plan.output_dir = dir.join(&plan.output_dir);
            }
        }
        Ok(plan)
    }

    /// Runs every task on `threads` workers (the plan's own count if `None`)
    /// and writes `results.csv`. Returns the rows written.
    pub fn run(&self, threads: Option<usize>, guard: Guard) -> Result<Vec<ResultRow>> {
        let threads = threads.or(self.threads).unwrap_or_else(default_threads).max(1);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
        let tasks: Vec<(u64, usize)> =
            self.seeds.iter().flat_map(|&s| (0..self.operations.len()).map(move |i| (s, i))).collect();
        let chunks: Vec<Vec<ResultRow>> = pool.install(|| {
            tasks.par_iter().map(|&(seed, i)| self.run_task(seed, i, guard)).collect::<Result<_>>()
        })?;
        let rows: Vec<ResultRow> = chunks.into_iter().flatten().collect();
        fs::create_dir_all(&self.output_dir).map_err(|e| CliError::io(&self.output_dir, e))?;
        let path = self.output_dir.join("results.csv");
        let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
        results_csv(&rows, std::io::BufWriter::new(file))?;
        Ok(rows)
    }

    fn run_task(&self, seed: u64, index: usize, guard: Guard) -> Result<Vec<ResultRow>> {
        let mut manifest = self.template.clone();
        manifest.seed = seed;
        let spec = manifest.to_spec()?;
        let cube = build_cube(&spec)?;
        let metrics = evaluate(&cube, &self.operations[index], index as u64, guard)?;
        Ok(metrics
            .into_iter()
            .map(|(metric, value)| ResultRow { model: spec.model.name(), n: spec.n, seed, metric, value })
            .collect())
    }
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Computes the (metric, value) pairs of one operation on one cube.
///
/// `salt` separates the random streams of repeated operations on the same seed.
pub fn evaluate(cube: &TwistedCube, op: &Operation, salt: u64, guard: Guard) -> Result<Vec<(String, String)>> {
    let seed = cube.spec().seed;
    let mut out: Vec<(String, String)> = Vec::new();
    let mut put = |name: &str, value: String| out.push((name.to_string(), value));
    match op {
        Operation::Info => {
            let count = cube.vertex_count();
            let degrees = (0..count).map(|v| cube.degree(v));
            let (lo, hi) = degrees.fold((usize::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)));
            let edges: usize = (0..count).map(|v| cube.degree(v)).sum::<usize>() / 2;
            put("vertices", count.to_string());
            put("edges", edges.to_string());
            put("degree_min", lo.to_string());
            put("degree_max", hi.to_string());
        }
        Operation::Diameter { exact: true, .. } => {
            put("diameter", diameter_exact(&cube.to_graph(), guard)?.to_string());
        }
        Operation::Diameter { exact: false, samples } => {
            let b = diameter_bounds(cube, *samples, seed ^ salt)?;
            put("diameter_lower", b.lower.to_string());
            put("diameter_upper", b.upper.to_string());
        }
        Operation::Route { pairs } => {
            let mut rng = StreamKey::new(seed, ROUTE_TAG, salt).stream();
            let count = cube.vertex_count() as u64;
            if count < 2 {
                return Err(CliError::Usage("routing needs at least two vertices".into()));
            }
            let (mut longest, mut total, mut valid) = (0usize, 0usize, 0usize);
            for _ in 0..*pairs {
                let s = rng.below(count) as u32;
                let mut t = rng.below(count - 1) as u32;
                if t >= s {
                    t += 1;
                }
                let r = greedy_route(cube, Vertex(s), Vertex(t))?;
                longest = longest.max(r.len());
                total += r.len();
                valid += r.is_valid(cube) as usize;
            }
            put("route_pairs", pairs.to_string());
            put("route_valid", valid.to_string());
            put("route_max_len", longest.to_string());
            put("route_mean_len", (total as f64 / (*pairs).max(1) as f64).to_string());
        }
        Operation::TopEigenvalues { count } => {
            let top = top_eigenvalues(cube, *count)?;
            for (i, v) in top.values.iter().enumerate() {
                put(&format!("lambda_{}", i + 1), v.to_string());
            }
            if let Some(gap) = top.normalized_gap() {
                put("normalized_gap", gap.to_string());
            }
        }
        Operation::Spectrum { bins } => {
            let s = crate::dense::spectrum(cube, guard)?;
            let degree = cube.degree(0);
            let h = empirical_histogram(&s, if *bins == 0 { degree + 1 } else { *bins });
            put("lambda_1", s.eigenvalues[0].to_string());
            if s.len() > 1 {
                put("lambda_2", s.eigenvalues[1].to_string());
            }
            put("lambda_min", s.eigenvalues[s.len() - 1].to_string());
            put("hist_l1_semicircle", h.l1_semicircle().to_string());
            put("hist_l1_gaussian", h.l1_gaussian().to_string());
        }
        Operation::Moments { kmax } => {
            let r = walk_moments(cube, *kmax, guard)?;
            for row in &r.rows {
                put(&format!("m_{}", row.k), row.m_k.to_string());
            }
        }
        Operation::Cycles { k } => {
            let mut counts = Vec::with_capacity(cube.vertex_count());
            for v in 0..cube.vertex_count() {
                counts.push(cycle_count(cube, v, *k, guard)?);
            }
            let min = counts.iter().copied().min().unwrap_or(0);
            let max = counts.iter().copied().max().unwrap_or(0);
            let mean = counts.iter().sum::<u64>() as f64 / counts.len().max(1) as f64;
            put(&format!("theta_{k}_min"), min.to_string());
            put(&format!("theta_{k}_max"), max.to_string());
            put(&format!("theta_{k}_mean"), mean.to_string());
        }
        Operation::SecondNeighborhood => {
            let sizes: Vec<usize> = (0..cube.vertex_count() as u32).map(|v| second_neighborhood(cube, Vertex(v))).collect();
            put("second_neighborhood_min", sizes.iter().min().copied().unwrap_or(0).to_string());
            put("second_neighborhood_max", sizes.iter().max().copied().unwrap_or(0).to_string());
        }
        Operation::Expansion { eta, alpha, trials } => {
            let probe_seed = StreamKey::new(seed, PROBE_TAG, salt).stream().next_u64();
            let r = expansion_probe(cube, *eta, *alpha, *trials, probe_seed)?;
            put("expansion_sets", r.sets_checked.to_string());
            put("expansion_min_ratio", r.min_ratio.to_string());
            put("expansion_min_family", r.min_family.name().to_string());
            put("expansion_passed", r.passed.to_string());
        }
        Operation::Automorphisms => {
            let r = automorphisms(cube, guard)?;
            put("aut_order", r.order.to_string());
            put("aut_trivial", r.is_trivial().to_string());
            put("aut_generators", r.generators.len().to_string());
        }
        Operation::MatchingCuts => {
            let cuts = matching_cut_search(cube, guard)?;
            put("matching_cuts", cuts.len().to_string());
        }
        Operation::Order => {
            let p = partial_order_build(cube, guard)?;
            put("order_cover_edges", p.edge_count().to_string());
            put("order_minimal", p.minimal_elements().len().to_string());
            put("order_maximal", p.maximal_elements().len().to_string());
        }
        Operation::Mixing { t_max } => {
            let t_max = t_max.unwrap_or(4 * cube.n() as usize + 4);
            let m = mixing_profile(&cube.to_graph(), Vertex(0), t_max, guard)?;
            put("t_mix_quarter", m.t_mix_quarter.map_or_else(|| "none".to_string(), |t| t.to_string()));
            put("tv_final", m.tv.last().copied().unwrap_or(f64::NAN).to_string());
        }
    }
    Ok(out)
}
