use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twistcube::error::{CliError, Result};
use twistcube::manifest::BaseManifest;
use twistcube::{dense, export, output, ExperimentPlan, Manifest};
use twistcube_core::metrics::{
    diameter_bounds, diameter_exact, expansion_probe, greedy_route, matching_cut_search, mixing_profile,
    partial_order_build,
};
use twistcube_core::spectral::{
    cycle_count, empirical_histogram, full_spectrum, top_eigenvalues, walk_moments,
};
use twistcube_core::symmetry::automorphisms;
use twistcube_core::{build_cube, Graph, Guard, Model, TwistSpec, TwistedCube, Vertex};

#[derive(Debug, Parser)]
#[command(name = "twistcube", version, about = "Build and analyse twisted hypercubes")]
struct Cli {
    /// Worker threads for batch runs (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Run analyses past their size guards.
    #[arg(long, global = true)]
    force: bool,
    /// Output file (stdout if omitted); for `gen`, the manifest path.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Edgelist,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a manifest and optionally the edge list and permutation file.
    Gen {
        /// duplicube, independent or explicit.
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON array of tables for the explicit model.
        #[arg(long)]
        permutations: Option<PathBuf>,
        /// Base graph as JSON `{"vertex_count": h, "edges": [[u, v], ...]}`.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Also write the graph here (edge list, or DOT with `--format dot`).
        #[arg(long)]
        edges: Option<PathBuf>,
        /// Also write the resolved permutation tables here.
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// Size, degree and edge count.
    Info { manifest: PathBuf },
    /// Diameter: exact, or sampled lower bound and the upper bound n.
    Diam {
        manifest: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Greedy route between two vertex words.
    Route {
        manifest: PathBuf,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
    },
    /// Adjacency spectrum, its histogram, or the leading eigenvalues.
    Spectrum {
        manifest: PathBuf,
        /// Only the leading eigenvalues, computed matrix-free.
        #[arg(long)]
        top: Option<usize>,
        /// Emit the histogram of the scaled spectrum with this many bins (0: degree + 1).
        #[arg(long)]
        histogram: Option<usize>,
        /// Use the portable single-stage solver.
        #[arg(long)]
        portable: bool,
    },
    /// Normalized closed-walk moments against the Catalan numbers.
    Moments {
        manifest: PathBuf,
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        /// Cross-check against moments of the dense spectrum.
        #[arg(long)]
        with_spectrum: bool,
    },
    /// Number of simple k-cycles through each vertex.
    Cycles {
        manifest: PathBuf,
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[arg(long)]
        vertex: Option<u32>,
    },
    /// Sampled vertex expansion probe.
    Expand {
        manifest: PathBuf,
        #[arg(long, default_value_t = 0.25)]
        eta: f64,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Sampling seed (default: the manifest seed).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Automorphism group generators and order.
    Aut { manifest: PathBuf },
    /// Every matching cut (small graphs only).
    Matchcut { manifest: PathBuf },
    /// The partial order obtained by orienting twist edges.
    Order { manifest: PathBuf },
    /// Total variation distance of the lazy random walk from uniform.
    Mix {
        manifest: PathBuf,
        #[arg(long, default_value_t = 0)]
        start: u32,
        #[arg(long)]
        tmax: Option<usize>,
    },
    /// Run an experiment plan.
    Batch { plan: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn load(path: &Path) -> Result<TwistedCube> {
    Ok(build_cube(&Manifest::load(path)?.to_spec()?)?)
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::io("<output>", e)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &'static str) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { what, path: path.into(), source })
}

fn run(cli: Cli) -> Result<()> {
    use Format::*;
    let guard = if cli.force { Guard::Override } else { Guard::Enforce };
    let out = cli.out.as_deref();
    match cli.command {
        Command::Gen { model, n, seed, permutations, base, edges, tables } => {
            let model = Model::parse(&model).ok_or_else(|| CliError::Usage(format!("unknown model {model:?}")))?;
            let format = pick(cli.format, Edgelist, &[Edgelist, Dot])?;
            let path = out.ok_or_else(|| CliError::Usage("gen needs --out for the manifest".into()))?;
            let permutations = permutations.map(|p| read_json::<Vec<Vec<u32>>>(&p, "permutation file")).transpose()?;
            if (model == Model::Explicit) != permutations.is_some() {
                return Err(CliError::Usage("--permutations goes with the explicit model and only with it".into()));
            }
            let base = base.map(|p| read_json::<BaseManifest>(&p, "base graph")).transpose()?;
            let base = base.map(|b| b.to_graph()).transpose()?;
            let spec = TwistSpec { model, n, seed, permutations, base };
            let cube = build_cube(&spec)?;
            Manifest::from_spec(&spec).save(path)?;
            if let Some(p) = edges {
                let w = sink(Some(&p))?;
                match format {
                    Dot => export::write_dot(&cube, w, cli.force)?,
                    _ => export::write_edgelist(&cube, w).map_err(|e| CliError::io(&p, e))?,
                }
            }
            if let Some(p) = tables {
                export::write_permutations(&cube, sink(Some(&p))?).map_err(|e| CliError::io(&p, e))?;
            }
        }
        Command::Info { manifest } => {
            let m = Manifest::load(&manifest)?;
            let cube = build_cube(&m.to_spec()?)?;
            let count = cube.vertex_count();
            let (lo, hi) = (0..count).map(|v| cube.degree(v)).fold((usize::MAX, 0), |(a, b), d| (a.min(d), b.max(d)));
            let edges = (0..count).map(|v| cube.degree(v)).sum::<usize>() / 2;
            let mut w = sink(out)?;
            match pick(cli.format, Text, &[Text, Json])? {
                Json => output::write_json(
                    &serde_json::json!({
                        "model": cube.spec().model.name(),
                        "n": cube.n(),
                        "seed": m.seed,
                        "vertices": count,
                        "edges": edges,
                        "degree_min": lo,
                        "degree_max": hi,
                    }),
                    &mut w,
                ),
                _ => {
                    let degree = if lo == hi { lo.to_string() } else { format!("{lo}..{hi}") };
                    writeln!(
                        w,
                        "model: {}\nn: {}\nseed: {}\nvertices: {count}\nedges: {edges}\ndegree: {degree}",
                        cube.spec().model.name(),
                        cube.n(),
                        m.seed
                    )
                }
            }
            .map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        Command::Diam { manifest, exact, samples } => {
            let cube = load(&manifest)?;
            let format = pick(cli.format, Text, &[Text, Json])?;
            let mut w = sink(out)?;
            if exact {
                let d = diameter_exact(&cube.to_graph(), guard)?;
                match format {
                    Json => output::write_json(&serde_json::json!({ "diameter": d }), &mut w),
                    _ => writeln!(w, "{d}"),
                }
            } else {
                let b = diameter_bounds(&cube, samples, cube.spec().seed)?;
                match format {
                    Json => output::write_json(
                        &serde_json::json!({ "lower": b.lower, "upper": b.upper, "observed": b.observed, "sources": b.sources }),
                        &mut w,
                    ),
                    _ => writeln!(w, "{} {}", b.lower, b.upper),
                }
            }
            .map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        Command::Route { manifest, from, to } => {
            let cube = load(&manifest)?;
            pick(cli.format, Json, &[Json])?;
            let trace = greedy_route(&cube, Vertex(from), Vertex(to))?;
            let mut w = sink(out)?;
            output::write_json(&output::route_json(&trace), &mut w).map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        Command::Spectrum { manifest, top, histogram, portable } => {
            let cube = load(&manifest)?;
            pick(cli.format, Csv, &[Csv])?;
            let w = sink(out)?;
            if let Some(count) = top {
                let t = top_eigenvalues(&cube, count)?;
                output::top_csv(&t.values, &t.residuals, w)?;
            } else {
                let s = if portable { full_spectrum(&cube, guard)? } else { dense::spectrum(&cube, guard)? };
                match histogram {
                    Some(bins) => {
                        let bins = if bins == 0 { cube.degree(0) + 1 } else { bins };
                        output::histogram_csv(&empirical_histogram(&s, bins), w)?
                    }
                    None => output::spectrum_csv(&s, w)?,
                }
            }
        }
        Command::Moments { manifest, kmax, with_spectrum } => {
            let cube = load(&manifest)?;
            pick(cli.format, Csv, &[Csv])?;
            let mut report = walk_moments(&cube, kmax, guard)?;
            if with_spectrum {
                report.attach_spectrum(&dense::spectrum(&cube, guard)?);
            }
            output::moments_csv(&report, sink(out)?)?;
        }
        Command::Cycles { manifest, k, vertex } => {
            let cube = load(&manifest)?;
            pick(cli.format, Csv, &[Csv])?;
            let vertices: Vec<u32> = match vertex {
                Some(v) => vec![v],
                None => (0..cube.vertex_count() as u32).collect(),
            };
            let mut counts = Vec::with_capacity(vertices.len());
            for v in vertices {
                counts.push((v, cycle_count(&cube, v as usize, k, guard)?));
            }
            output::cycles_csv(&counts, sink(out)?)?;
        }
        Command::Expand { manifest, eta, alpha, trials, seed } => {
            let cube = load(&manifest)?;
            pick(cli.format, Json, &[Json])?;
            let r = expansion_probe(&cube, eta, alpha, trials, seed.unwrap_or(cube.spec().seed))?;
            let families: Vec<_> = r
                .families
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "family": f.family.name(),
                        "sets": f.sets,
                        "min_ratio": f.min_ratio,
                        "mean_ratio": f.mean_ratio,
                        "argmin_size": f.argmin_size,
                    })
                })
                .collect();
            let v = serde_json::json!({
                "eta": r.eta,
                "alpha": r.alpha,
                "max_set_size": r.max_set_size,
                "exhaustive": r.exhaustive,
                "sets_checked": r.sets_checked,
                "min_ratio": r.min_ratio,
                "min_family": r.min_family.name(),
                "passed": r.passed,
                "families": families,
            });
            let mut w = sink(out)?;
            output::write_json(&v, &mut w).map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        Command::Aut { manifest } => {
            let cube = load(&manifest)?;
            pick(cli.format, Json, &[Json])?;
            let r = automorphisms(&cube, guard)?;
            let mut w = sink(out)?;
            output::write_json(&output::aut_json(&r), &mut w).map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        Command::Matchcut { manifest } => {
            let cube = load(&manifest)?;
            let cuts = matching_cut_search(&cube, guard)?;
            let mut w = sink(out)?;
            match pick(cli.format, Json, &[Json, Csv])? {
                Csv => output::cuts_csv(&cuts, w)?,
                _ => {
                    output::write_json(&output::cuts_json(&cuts), &mut w).map_err(io_err)?;
                    w.flush().map_err(io_err)?;
                }
            }
        }
        Command::Order { manifest } => {
            let cube = load(&manifest)?;
            let p = partial_order_build(&cube, guard)?;
            let mut w = sink(out)?;
            match pick(cli.format, Json, &[Json, Edgelist])? {
                Edgelist => {
                    for x in p.topological_order() {
                        for y in p.successors(Vertex(*x)) {
                            writeln!(w, "{x} {y}").map_err(io_err)?;
                        }
                    }
                }
                _ => output::write_json(
                    &serde_json::json!({
                        "vertices": p.vertex_count(),
                        "cover_edges": p.edge_count(),
                        "minimal": p.minimal_elements(),
                        "maximal": p.maximal_elements(),
                    }),
                    &mut w,
                )
                .map_err(io_err)?,
            }
            w.flush().map_err(io_err)?;
        }
        Command::Mix { manifest, start, tmax } => {
            let cube = load(&manifest)?;
            pick(cli.format, Csv, &[Csv])?;
            let tmax = tmax.unwrap_or(4 * cube.n() as usize + 4);
            let m = mixing_profile(&cube.to_graph(), Vertex(start), tmax, guard)?;
            output::mixing_csv(&m, sink(out)?)?;
        }
        Command::Batch { plan } => {
            let plan = ExperimentPlan::load(&plan)?;
            let rows = plan.run(cli.threads, guard)?;
            let mut w = sink(out)?;
            writeln!(w, "{} rows written to {}", rows.len(), plan.output_dir.join("results.csv").display())
                .map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
    }
    Ok(())
}
