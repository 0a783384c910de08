//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Every expected value here comes either from a closed form (hypercube
//! spectra, binomial counts, Catalan numbers) or from an oracle written in
//! this file independently of the library code it checks.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use twistcube::manifest::{Manifest, ModelName};
use twistcube::{dense, ExperimentPlan, Operation};
use twistcube_core::metrics::{
    diameter_exact, greedy_route, matching_cut_search, partial_order_build, second_neighborhood,
};
use twistcube_core::spectral::{
    cycle_count, empirical_histogram, full_spectrum, top_eigenvalues, walk_moments, SpectrumResult,
};
use twistcube_core::symmetry::{automorphisms, brute_force_automorphisms, graph_automorphisms};
use twistcube_core::{
    build_cube, Graph, Guard, PermutationTable, SimpleGraph, StreamKey, TwistSpec, TwistedCube, Vertex,
};

struct Check {
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if !cond {
            if self.notes.len() < 5 {
                self.notes.push(what());
            }
            self.ok = false;
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn both_models(n: u32, seeds: std::ops::Range<u64>) -> Vec<TwistSpec> {
    seeds.flat_map(|s| [TwistSpec::duplicube(n, s), TwistSpec::independent(n, s)]).collect()
}

fn cube(spec: &TwistSpec) -> TwistedCube {
    build_cube(spec).expect("valid spec")
}

fn sorted_edges(cube: &TwistedCube) -> Vec<(u32, u32)> {
    let mut e: Vec<(u32, u32)> = cube.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    e.sort_unstable();
    e
}

fn hypercube_degeneration() -> Check {
    let mut c = Check::new();
    for n in 1..=12u32 {
        let mut direct = Vec::new();
        for x in 0u32..1 << n {
            for i in 0..n {
                let y = x ^ (1 << i);
                if x < y {
                    direct.push((x, y));
                }
            }
        }
        direct.sort_unstable();
        let built = sorted_edges(&cube(&TwistSpec::hypercube(n)));
        c.require(built == direct, || format!("n={n}: edge sets differ"));
    }
    c.note("identity builds equal Q_n for n=1..12".into());
    c
}

fn hypercube_spectrum() -> Check {
    let mut c = Check::new();
    let mut worst: f64 = 0.0;
    for n in 1..=10u32 {
        let q = cube(&TwistSpec::hypercube(n));
        let s = dense::spectrum(&q, Guard::Enforce).unwrap();
        let mut expected = Vec::new();
        for d in 0..=n {
            for _ in 0..binomial(n as u64, d as u64) {
                expected.push(n as f64 - 2.0 * d as f64);
            }
        }
        let err = expected.iter().zip(&s.eigenvalues).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        worst = worst.max(err);
        c.require(expected.len() == s.len() && err <= 1e-8, || format!("n={n}: max error {err:e}"));
        let want: Vec<(i64, usize)> =
            (0..=n).map(|d| (n as i64 - 2 * d as i64, binomial(n as u64, d as u64) as usize)).collect();
        let got: Vec<(i64, usize)> = s.clusters(1e-6).into_iter().map(|(m, k)| (m.round() as i64, k)).collect();
        c.require(got == want, || format!("n={n}: clusters {got:?}"));
        if n <= 9 {
            let portable = full_spectrum(&q, Guard::Enforce).unwrap();
            let gap = portable.eigenvalues.iter().zip(&s.eigenvalues).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            c.require(gap <= 1e-9, || format!("n={n}: solvers disagree by {gap:e}"));
        }
    }
    c.note(format!("max eigenvalue error {worst:.1e}"));
    c
}

fn spectral_gap() -> Check {
    let mut c = Check::new();
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for n in 6..=12u32 {
        for spec in both_models(n, 0..10) {
            let g = cube(&spec);
            let top = top_eigenvalues(&g, 2).unwrap();
            let (l1, l2) = (top.values[0], top.values[1]);
            let err = (l1 - n as f64).abs().max((l2 - (n as f64 - 2.0)).abs());
            worst = worst.max(err);
            runs += 1;
            c.require(err <= 1e-8, || format!("{:?} n={n} seed={}: {l1} {l2}", spec.model, spec.seed));
            if n <= 9 && spec.seed < 2 {
                let s = dense::spectrum(&g, Guard::Enforce).unwrap();
                let gap = (s.eigenvalues[1] - l2).abs();
                c.require(gap <= 1e-8, || format!("n={n}: dense second eigenvalue {}", s.eigenvalues[1]));
            }
        }
    }
    c.note(format!("{runs} cubes, max deviation {worst:.1e}"));
    c
}

fn routing() -> Check {
    let mut c = Check::new();
    let n = 16u32;
    let count = 1u64 << n;
    let mut longest = 0;
    for spec in [TwistSpec::duplicube(n, 16), TwistSpec::independent(n, 16), TwistSpec::hypercube(n)] {
        let g = cube(&spec);
        let identity = spec.permutations.is_some();
        let mut rng = StreamKey::new(spec.seed, 404, identity as u64).stream();
        for _ in 0..10_000 {
            let s = rng.below(count) as u32;
            let t = loop {
                let t = rng.below(count) as u32;
                if t != s {
                    break t;
                }
            };
            let r = greedy_route(&g, Vertex(s), Vertex(t)).unwrap();
            longest = longest.max(r.len());
            let mut at = s;
            let mut walk_ok = true;
            for h in &r.hops {
                walk_ok &= g.neighbors(Vertex(at)).unwrap().contains(&h.vertex);
                at = h.vertex.0;
            }
            walk_ok &= at == t;
            c.require(walk_ok && r.is_valid(&g) && r.len() <= n as usize, || format!("route {s}->{t} invalid"));
            if identity {
                let h = (s ^ t).count_ones() as usize;
                c.require(r.len() == h, || format!("Q16 route {s}->{t}: {} hops, distance {h}", r.len()));
            }
        }
    }
    c.note(format!("3 x 10^4 routes, longest {longest}"));
    c
}

fn diameter_sandwich() -> Check {
    let mut c = Check::new();
    let mut at14 = Vec::new();
    for n in 2..=14u32 {
        let lower = ((n - 1) as f64 / (n as f64).log2()).ceil() as u32;
        for spec in both_models(n, 0..20) {
            let d = diameter_exact(&cube(&spec).to_graph(), Guard::Enforce).unwrap();
            c.require(lower <= d && d <= n, || format!("{:?} n={n} seed={}: D={d}", spec.model, spec.seed));
            if n == 14 && spec.model == twistcube_core::Model::Duplicube {
                at14.push(d);
            }
        }
    }
    let below = at14.iter().filter(|&&d| d < 14).count();
    let mean = at14.iter().sum::<u32>() as f64 / at14.len() as f64;
    c.require(below >= 19, || format!("only {below}/20 duplicube diameters below 14"));
    c.note(format!("n=14 duplicube mean D={mean:.2}, D<14 in {below}/20"));
    c
}

/// `(1/N) Σ (λ/√d)^k`.
fn eigen_moment(s: &SpectrumResult, d: f64, k: i32) -> f64 {
    s.eigenvalues.iter().map(|l| (l / d.sqrt()).powi(k)).sum::<f64>() / s.len() as f64
}

fn semicircle_moments() -> Check {
    let mut c = Check::new();
    // Tolerances 3/n and 15/n checked on exact walk counts at smaller n first.
    for n in 10..=12u32 {
        for seed in 0..5 {
            let r = walk_moments(&cube(&TwistSpec::duplicube(n, seed)), 6, Guard::Enforce).unwrap();
            let (m4, m6) = (r.moment(4).unwrap(), r.moment(6).unwrap());
            c.require((m4 - 2.0).abs() <= 3.0 / n as f64 && (m6 - 5.0).abs() <= 15.0 / n as f64, || {
                format!("n={n} seed={seed}: m4={m4} m6={m6}")
            });
        }
    }
    let n = 13u32;
    let mut summary = Vec::new();
    for seed in 0..5 {
        let g = cube(&TwistSpec::duplicube(n, seed));
        let r = walk_moments(&g, 6, Guard::Enforce).unwrap();
        let (m2, m4, m6) = (r.moment(2).unwrap(), r.moment(4).unwrap(), r.moment(6).unwrap());
        c.require(m2 == 1.0, || format!("seed={seed}: m2={m2}"));
        c.require((m4 - 2.0).abs() <= 3.0 / 13.0, || format!("seed={seed}: m4={m4}"));
        c.require((m6 - 5.0).abs() <= 15.0 / 13.0, || format!("seed={seed}: m6={m6}"));
        let s = dense::spectrum(&g, Guard::Enforce).unwrap();
        for (k, m) in [(2, m2), (4, m4), (6, m6)] {
            let e = eigen_moment(&s, n as f64, k);
            c.require((e - m).abs() <= 1e-8 * m, || format!("seed={seed}: eigenvalue m{k}={e} vs walks {m}"));
        }
        let h = empirical_histogram(&s, n as usize + 1);
        let (ls, lg) = (h.l1_semicircle(), h.l1_gaussian());
        c.require(ls < lg, || format!("seed={seed}: L1 semicircle {ls:.3} >= gaussian {lg:.3}"));
        summary.push(format!("m4={m4:.3} m6={m6:.3} L1 {ls:.3}/{lg:.3}"));
    }
    let q = dense::spectrum(&cube(&TwistSpec::hypercube(12)), Guard::Enforce).unwrap();
    let h = empirical_histogram(&q, 13);
    let (ls, lg) = (h.l1_semicircle(), h.l1_gaussian());
    c.require(lg < ls, || format!("Q12: L1 gaussian {lg:.3} >= semicircle {ls:.3}"));
    c.note(format!("n=13 [{}]; Q12 L1 {ls:.3}/{lg:.3}", summary.join("; ")));
    c
}

/// Cycles of length 3 or 4 through `v`: each pair of neighbors closes a
/// triangle if adjacent and a square through every other common neighbor.
fn short_cycles_oracle(g: &SimpleGraph, v: usize) -> u64 {
    let nbrs = g.neighbors(v);
    let mut total = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        let na: BTreeSet<u32> = g.neighbors(a as usize).iter().copied().collect();
        for &b in &nbrs[i + 1..] {
            total += na.contains(&b) as u64;
            total += g.neighbors(b as usize).iter().filter(|w| na.contains(w) && **w as usize != v).count() as u64;
        }
    }
    total
}

fn cycles() -> Check {
    let mut c = Check::new();
    let mut min_seen = u64::MAX;
    for n in 2..=10u32 {
        for spec in both_models(n, 0..10) {
            let g = cube(&spec);
            let simple = g.to_graph();
            for v in 0..g.vertex_count() {
                let theta = cycle_count(&g, v, 4, Guard::Enforce).unwrap();
                min_seen = min_seen.min(theta);
                c.require(theta >= 1, || format!("{:?} n={n} seed={} v={v}: no 4-cycle", spec.model, spec.seed));
                if n <= 8 {
                    let oracle = short_cycles_oracle(&simple, v);
                    c.require(theta == oracle, || format!("n={n} v={v}: {theta} vs oracle {oracle}"));
                }
            }
        }
    }
    for n in 2..=8u32 {
        let q = cube(&TwistSpec::hypercube(n));
        let simple = q.to_graph();
        let want = binomial(n as u64, 2);
        for v in 0..q.vertex_count() {
            let theta = cycle_count(&q, v, 4, Guard::Enforce).unwrap();
            let oracle = short_cycles_oracle(&simple, v);
            c.require(theta == want && oracle == want, || format!("Q{n} v={v}: {theta}, oracle {oracle}"));
        }
    }
    c.note(format!("smallest theta(v,4) on random cubes: {min_seen}"));
    c
}

fn second_neighborhoods() -> Check {
    let mut c = Check::new();
    for n in 2..=12u32 {
        let want = binomial(n as u64, 2) as usize;
        let mut specs = both_models(n, 0..5);
        specs.push(TwistSpec::hypercube(n));
        for spec in specs {
            let g = cube(&spec);
            let identity = spec.permutations.is_some();
            for v in 0..g.vertex_count() as u32 {
                let a = second_neighborhood(&g, Vertex(v));
                c.require(a >= want, || format!("{:?} n={n} seed={} v={v}: {a}", spec.model, spec.seed));
                if identity {
                    c.require(a == want, || format!("Q{n} v={v}: {a}"));
                }
                if n <= 7 {
                    let by_bfs = g.bfs_distances(v as usize).iter().filter(|&&d| d == 2).count();
                    c.require(a == by_bfs, || format!("n={n} v={v}: {a} vs bfs {by_bfs}"));
                }
            }
        }
    }
    c.note("checked n=2..12, 11 cubes per n".into());
    c
}

fn generation_cut() -> Check {
    let mut c = Check::new();
    for n in 1..=16u32 {
        for spec in [TwistSpec::duplicube(n, 9), TwistSpec::independent(n, 9), TwistSpec::hypercube(n)] {
            let g = cube(&spec);
            let half = 1u32 << (n - 1);
            let crossing = g.edges().filter(|&(u, v)| (u ^ v) & half != 0).count();
            c.require(crossing == half as usize, || format!("{:?} n={n}: {crossing} crossing edges", spec.model));
        }
    }
    c.note("crossing = 2^(n-1) for n=1..16, ratio 1".into());
    c
}

fn preserves(g: &SimpleGraph, phi: &[u32]) -> bool {
    (0..g.vertex_count()).all(|u| g.neighbors(u).iter().all(|&w| g.has_edge(phi[u] as usize, phi[w as usize] as usize)))
}

fn random_graph(h: usize, key: StreamKey) -> SimpleGraph {
    let mut rng = key.stream();
    let mut edges = Vec::new();
    for u in 0..h as u32 {
        for v in u + 1..h as u32 {
            if rng.below(2) == 1 {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_edges(h, &edges).unwrap()
}

fn fuzzed_spec(i: u64) -> TwistSpec {
    let mut rng = StreamKey::new(0xf0220, 1, i).stream();
    let seed = rng.next_u64();
    match i % 5 {
        0 => TwistSpec::duplicube(1 + rng.below(4) as u32, seed),
        1 => TwistSpec::independent(1 + rng.below(4) as u32, seed),
        2 => {
            let n = 2 + rng.below(3) as u32;
            let tables = (1..n).map(|j| PermutationTable::uniform(StreamKey::new(seed, j, 0), 1 << j).image().to_vec());
            TwistSpec::explicit(n, tables.collect())
        }
        3 => {
            let h = 2 + rng.below(3) as usize;
            let n = if h == 2 { 1 + rng.below(3) as u32 } else { 1 + rng.below(2) as u32 };
            TwistSpec::duplicube(n, seed).with_base(random_graph(h, StreamKey::new(seed, 2, 0)))
        }
        _ => {
            let h = 2 + rng.below(2) as usize;
            TwistSpec::independent(2, seed).with_base(random_graph(h, StreamKey::new(seed, 3, 0)))
        }
    }
}

fn automorphism_groups() -> Check {
    let mut c = Check::new();
    for (n, want) in [(2u32, "8"), (3, "48"), (4, "384")] {
        let q = cube(&TwistSpec::hypercube(n));
        let r = automorphisms(&q, Guard::Enforce).unwrap();
        let verified = r.verify(&q.to_graph()).unwrap();
        c.require(r.order.to_string() == want && verified == r.order, || format!("Q{n}: order {}", r.order));
    }
    let mut max_vertices = 0;
    for i in 0..50 {
        let spec = fuzzed_spec(i);
        let g = cube(&spec).to_graph();
        max_vertices = max_vertices.max(g.vertex_count());
        c.require(g.vertex_count() <= 16, || format!("fuzz {i}: {} vertices", g.vertex_count()));
        let found = graph_automorphisms(&g, Guard::Enforce).unwrap();
        let brute = brute_force_automorphisms(&g, Guard::Enforce).unwrap();
        let all_valid =
            found.generators.iter().chain(&brute.generators).all(|phi| preserves(&g, phi));
        c.require(found.order == brute.order && all_valid, || {
            format!("fuzz {i} {:?}: finder {} brute {}", spec.model, found.order, brute.order)
        });
    }
    let seeds: Vec<u64> = (0..20).collect();
    let mut trivial = 0;
    for &s in &seeds {
        trivial += automorphisms(&cube(&TwistSpec::duplicube(10, s)), Guard::Enforce).unwrap().is_trivial() as usize;
    }
    c.require(trivial >= 18, || format!("only {trivial}/20 trivial groups at n=10"));
    c.note(format!("50 fuzzed graphs up to {max_vertices} vertices agree; n=10 trivial {trivial}/20"));
    c
}

fn matching_cuts() -> Check {
    let mut c = Check::new();
    for spec in both_models(2, 0..5) {
        let cuts = matching_cut_search(&cube(&spec), Guard::Enforce).unwrap();
        c.require(cuts.len() == 2, || format!("G2 seed {}: {} cuts", spec.seed, cuts.len()));
    }
    let mut reported = 0;
    let mut cubes = vec![TwistSpec::hypercube(3)];
    cubes.extend(both_models(3, 0..5));
    cubes.extend(both_models(4, 0..2));
    for spec in cubes {
        let g = cube(&spec).to_graph();
        let cuts = matching_cut_search(&cube(&spec), Guard::Enforce).unwrap();
        let count = g.vertex_count();
        let full = (1u32 << count) - 1;
        for cut in &cuts {
            reported += 1;
            let side = cut.side;
            let mut crossing: Vec<(u32, u32)> = g
                .edges()
                .filter(|&(u, v)| (side >> u & 1) != (side >> v & 1))
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            crossing.sort_unstable();
            let mut ends: Vec<u32> = crossing.iter().flat_map(|&(u, v)| [u, v]).collect();
            ends.sort_unstable();
            ends.dedup();
            let mut listed: Vec<(u32, u32)> = cut.crossing.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            listed.sort_unstable();
            let ok = side != 0 && side != full && ends.len() == 2 * crossing.len() && listed == crossing;
            c.require(ok, || format!("{:?} side {side:#x} is not a matching cut", spec.model));
        }
        if spec.permutations.is_some() {
            for i in 0..3 {
                let zero_side = (0..count as u32).filter(|x| x >> i & 1 == 0).fold(0u32, |m, x| m | 1 << x);
                c.require(cuts.iter().any(|k| k.side == zero_side), || format!("Q3 coordinate cut {i} missing"));
            }
            c.note(format!("Q3: {} matching cuts", cuts.len()));
        }
    }
    c.note(format!("{reported} reported cuts re-verified"));
    c
}

fn partial_orders() -> Check {
    let mut c = Check::new();
    for n in 1..=10u32 {
        for spec in both_models(n, 0..5) {
            let g = cube(&spec);
            let p = partial_order_build(&g, Guard::Enforce).unwrap();
            let count = g.vertex_count();
            let mut indegree = vec![0usize; count];
            for x in 0..count as u32 {
                for &y in p.successors(Vertex(x)) {
                    indegree[y as usize] += 1;
                }
            }
            let mut stack: Vec<u32> = (0..count as u32).filter(|&x| indegree[x as usize] == 0).collect();
            let mut seen = 0;
            while let Some(x) = stack.pop() {
                seen += 1;
                for &y in p.successors(Vertex(x)) {
                    indegree[y as usize] -= 1;
                    if indegree[y as usize] == 0 {
                        stack.push(y);
                    }
                }
            }
            c.require(seen == count, || format!("{:?} n={n} seed={}: cycle", spec.model, spec.seed));
            c.require(p.edge_count() == (n as usize) << (n - 1), || format!("n={n}: {} edges", p.edge_count()));
        }
    }
    for n in 1..=4u32 {
        let p = partial_order_build(&cube(&TwistSpec::hypercube(n)), Guard::Enforce).unwrap();
        for x in 0..1u32 << n {
            for y in 0..1u32 << n {
                let coordinatewise = x & !y == 0;
                c.require(p.le(Vertex(x), Vertex(y)) == coordinatewise, || format!("Q{n}: {x} <= {y}"));
            }
        }
    }
    c.note("100 random orders acyclic; Q1..Q4 coordinatewise".into());
    c
}

fn batch_determinism() -> Check {
    let mut c = Check::new();
    let dir = tempfile::tempdir().unwrap();
    let ops = vec![
        Operation::Info,
        Operation::Diameter { exact: true, samples: 0 },
        Operation::Diameter { exact: false, samples: 16 },
        Operation::Route { pairs: 300 },
        Operation::TopEigenvalues { count: 3 },
        Operation::Spectrum { bins: 0 },
        Operation::Moments { kmax: 6 },
        Operation::Cycles { k: 4 },
        Operation::SecondNeighborhood,
        Operation::Expansion { eta: 0.25, alpha: 0.1, trials: 40 },
        Operation::Automorphisms,
        Operation::Order,
        Operation::Mixing { t_max: None },
    ];
    let mut outputs = Vec::new();
    let mut first_run = Duration::ZERO;
    let mut slowest_rerun = Duration::ZERO;
    for (run, threads) in [1usize, 4, 1, 3].into_iter().enumerate() {
        let mut texts = Vec::new();
        for model in [ModelName::Duplicube, ModelName::Independent] {
            let out = dir.path().join(format!("{model:?}"));
            let plan = ExperimentPlan {
                template: Manifest { model, n: 8, seed: 0, permutations: None, base: None },
                seeds: (1..=6).collect(),
                operations: ops.clone(),
                output_dir: out.clone(),
                threads: None,
            };
            let t = Instant::now();
            plan.run(Some(threads), Guard::Enforce).unwrap();
            if run == 0 {
                first_run += t.elapsed();
            } else {
                slowest_rerun = slowest_rerun.max(t.elapsed());
            }
            texts.push(fs::read(out.join("results.csv")).unwrap());
        }
        outputs.push((threads, texts));
    }
    for (threads, texts) in &outputs[1..] {
        c.require(texts == &outputs[0].1, || format!("threads={threads} output differs"));
    }
    let rows = String::from_utf8(outputs[0].1[0].clone()).unwrap();
    c.require(rows.starts_with("model,n,seed,metric,value\n"), || "missing header".into());
    c.require(slowest_rerun <= 2 * first_run.max(Duration::from_millis(200)), || {
        format!("rerun {slowest_rerun:?} vs first {first_run:?}")
    });
    c.note(format!("{} rows per model, identical at 1/4/1/3 threads", rows.lines().count() - 1));
    c
}

/// Number, name, time budget in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "hypercube degeneration", 10, hypercube_degeneration),
        (2, "hypercube spectrum", 60, hypercube_spectrum),
        (3, "spectral gap", 300, spectral_gap),
        (4, "greedy routing", 30, routing),
        (5, "diameter sandwich", 600, diameter_sandwich),
        (6, "semicircle moments", 900, semicircle_moments),
        (7, "4-cycles", 120, cycles),
        (8, "second neighborhood", 120, second_neighborhoods),
        (9, "top generation cut", 5, generation_cut),
        (10, "automorphisms", 600, automorphism_groups),
        (11, "matching cuts", 60, matching_cuts),
        (12, "partial order", 60, partial_orders),
        (13, "batch determinism", 600, batch_determinism),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t = Instant::now();
        let check = run();
        let elapsed = t.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let pass = check.ok && in_time;
        failed += !pass as usize;
        let mut notes = check.notes.join("; ");
        if !in_time {
            notes.push_str("; over time budget");
        }
        println!(
            "{} criterion {id:>2} {name}: {notes} [{:.1}s of {budget}s]",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
