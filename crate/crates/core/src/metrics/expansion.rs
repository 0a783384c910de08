use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::cube::TwistedCube;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{KeyedStream, StreamKey};
use crate::vertex::Vertex;
use crate::BitSet;

/// Probes on at most this many vertices enumerate every subset instead of sampling.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 20;

const PROBE_TAG: u32 = 0x4558_5041;
const NONE: u8 = u8::MAX;

/// Outer vertex boundary of a set, split by edge generation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub set_size: usize,
    pub boundary_size: usize,
    /// `boundary_size / set_size`.
    pub ratio: f64,
    /// Entry `k` is `|∂_k S|`, the boundary reached through edges of
    /// generation `≤ k` (generation 0 being base-graph edges); length `n + 1`.
    pub by_generation: Vec<usize>,
}

struct Scratch {
    member: BitSet,
    best: Vec<u8>,
    touched: Vec<u32>,
}

impl Scratch {
    fn new(count: usize) -> Self {
        Scratch { member: BitSet::new(count), best: vec![NONE; count], touched: Vec::new() }
    }

    /// Boundary of `set`; `set` must be duplicate-free and in range.
    fn boundary(&mut self, cube: &TwistedCube, set: &[u32]) -> ExpansionReport {
        let n = cube.n();
        for &x in set {
            self.member.insert(x as usize);
        }
        for &x in set {
            for k in 1..=n {
                let y = cube.neighbor_raw(x, k);
                self.mark(y, k as u8);
            }
            if cube.base().is_some() {
                cube.for_each_neighbor_below(x, 1, |y| self.mark(y, 0));
            }
        }
        let mut by_generation = vec![0usize; n as usize + 1];
        for &y in &self.touched {
            by_generation[self.best[y as usize] as usize] += 1;
            self.best[y as usize] = NONE;
        }
        for k in 1..by_generation.len() {
            by_generation[k] += by_generation[k - 1];
        }
        self.touched.clear();
        for &x in set {
            self.member.remove(x as usize);
        }
        let boundary_size = by_generation[n as usize];
        ExpansionReport {
            set_size: set.len(),
            boundary_size,
            ratio: boundary_size as f64 / set.len() as f64,
            by_generation,
        }
    }

    #[inline]
    fn mark(&mut self, y: u32, k: u8) {
        if self.member.contains(y as usize) {
            return;
        }
        let b = &mut self.best[y as usize];
        if *b == NONE {
            self.touched.push(y);
            *b = k;
        } else if k < *b {
            *b = k;
        }
    }
}

/// Exact `∂S` and every `∂_k S`. `S` must be non-empty and proper.
pub fn vertex_boundary(cube: &TwistedCube, set: &[Vertex]) -> Result<ExpansionReport> {
    let count = cube.vertex_count();
    let mut distinct = BitSet::new(count);
    let mut words = Vec::with_capacity(set.len());
    for &x in set {
        if x.index() >= count {
            return Err(Error::VertexRange { vertex: x.0 as u64, count: count as u64 });
        }
        if distinct.insert(x.index()) {
            words.push(x.0);
        }
    }
    if words.is_empty() || words.len() == count {
        return Err(Error::Domain("boundary needs a non-empty proper subset"));
    }
    Ok(Scratch::new(count).boundary(cube, &words))
}

/// Sampled set families used by [`expansion_probe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SetFamily {
    /// Uniformly random subsets of random size.
    Uniform,
    /// Prefixes of a breadth-first order from a random center (balls and partial balls).
    BfsPrefix,
    /// Unions of instance sets `I_s`, either scattered or contiguous.
    InstanceUnion,
    /// Hamming balls `{x : |x ⊕ c| ≤ r}` of the coordinate words.
    HammingBall,
    /// Every subset (small graphs only).
    Exhaustive,
}

impl SetFamily {
    pub fn name(self) -> &'static str {
        match self {
            SetFamily::Uniform => "uniform",
            SetFamily::BfsPrefix => "bfs_prefix",
            SetFamily::InstanceUnion => "instance_union",
            SetFamily::HammingBall => "hamming_ball",
            SetFamily::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyStats {
    pub family: SetFamily,
    pub sets: usize,
    pub min_ratio: f64,
    pub mean_ratio: f64,
    /// Size of the set attaining `min_ratio`.
    pub argmin_size: usize,
}

/// Observed vertex expansion over sampled sets of size `≤ η|V|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub eta: f64,
    pub alpha: f64,
    pub max_set_size: usize,
    pub exhaustive: bool,
    pub sets_checked: usize,
    pub min_ratio: f64,
    pub min_family: SetFamily,
    /// `min_ratio ≥ alpha`: no sampled set violated α-expansion.
    pub passed: bool,
    pub families: Vec<FamilyStats>,
}

/// Looks for sets of size at most `η|V|` with small vertex expansion.
///
/// Graphs with at most [`MAX_EXHAUSTIVE_VERTICES`] vertices are checked on
/// every subset; larger ones on `trials` sets drawn round-robin from the
/// sampled families. Trial `t` uses the stream keyed by `(seed, t)`.
pub fn expansion_probe(cube: &TwistedCube, eta: f64, alpha: f64, trials: usize, seed: u64) -> Result<ProbeReport> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Domain("eta must lie in (0, 1)"));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Domain("alpha must be positive"));
    }
    let count = cube.vertex_count();
    let max_set_size = libm::floor(eta * count as f64) as usize;
    if max_set_size == 0 {
        return Err(Error::Domain("eta * |V| is below one vertex"));
    }
    let mut scratch = Scratch::new(count);
    let mut stats: Vec<FamilyStats> = Vec::new();
    let mut record = |family: SetFamily, rep: &ExpansionReport| {
        let entry = match stats.iter_mut().find(|s| s.family == family) {
            Some(e) => e,
            None => {
                stats.push(FamilyStats { family, sets: 0, min_ratio: f64::INFINITY, mean_ratio: 0.0, argmin_size: 0 });
                stats.last_mut().unwrap()
            }
        };
        entry.sets += 1;
        entry.mean_ratio += rep.ratio;
        if rep.ratio < entry.min_ratio {
            entry.min_ratio = rep.ratio;
            entry.argmin_size = rep.set_size;
        }
    };

    let exhaustive = count <= MAX_EXHAUSTIVE_VERTICES;
    if exhaustive {
        let mut set = Vec::with_capacity(count);
        for mask in 1u32..(1 << count) {
            if mask.count_ones() as usize > max_set_size {
                continue;
            }
            set.clear();
            set.extend((0..count as u32).filter(|&i| mask >> i & 1 == 1));
            let rep = scratch.boundary(cube, &set);
            record(SetFamily::Exhaustive, &rep);
        }
    } else {
        let mut sampler = Sampler::new(cube, max_set_size);
        let families = [SetFamily::Uniform, SetFamily::BfsPrefix, SetFamily::InstanceUnion, SetFamily::HammingBall];
        for t in 0..trials {
            let family = families[t % families.len()];
            let mut stream = StreamKey::new(seed, PROBE_TAG, t as u64).stream();
            let set = sampler.draw(family, &mut stream);
            let rep = scratch.boundary(cube, set);
            record(family, &rep);
        }
    }

    let mut sets_checked = 0;
    for s in &mut stats {
        sets_checked += s.sets;
        s.mean_ratio /= s.sets as f64;
    }
    let best = stats
        .iter()
        .min_by(|a, b| a.min_ratio.total_cmp(&b.min_ratio))
        .ok_or(Error::Domain("no sets were probed"))?;
    let (min_ratio, min_family) = (best.min_ratio, best.family);
    Ok(ProbeReport {
        eta,
        alpha,
        max_set_size,
        exhaustive,
        sets_checked,
        min_ratio,
        min_family,
        passed: min_ratio >= alpha,
        families: stats,
    })
}

struct Sampler<'a> {
    cube: &'a TwistedCube,
    max: usize,
    pool: Vec<u32>,
    set: Vec<u32>,
    seen: BitSet,
}

impl<'a> Sampler<'a> {
    fn new(cube: &'a TwistedCube, max: usize) -> Self {
        let count = cube.vertex_count();
        Sampler { cube, max, pool: (0..count as u32).collect(), set: Vec::new(), seen: BitSet::new(count) }
    }

    fn draw(&mut self, family: SetFamily, rng: &mut KeyedStream) -> &[u32] {
        self.set.clear();
        let count = self.pool.len();
        match family {
            SetFamily::Uniform | SetFamily::Exhaustive => {
                let size = 1 + rng.below(self.max as u64) as usize;
                for i in 0..size {
                    let j = i + rng.below((count - i) as u64) as usize;
                    self.pool.swap(i, j);
                }
                self.set.extend_from_slice(&self.pool[..size]);
            }
            SetFamily::BfsPrefix => {
                let size = 1 + rng.below(self.max as u64) as usize;
                let center = rng.below(count as u64) as u32;
                self.seen.insert(center as usize);
                self.set.push(center);
                let mut head = 0;
                while self.set.len() < size && head < self.set.len() {
                    let u = self.set[head];
                    head += 1;
                    let (set, seen) = (&mut self.set, &mut self.seen);
                    self.cube.for_each_neighbor(u as usize, |w| {
                        if set.len() < size && seen.insert(w) {
                            set.push(w as u32);
                        }
                    });
                }
                for &x in &self.set {
                    self.seen.remove(x as usize);
                }
            }
            SetFamily::InstanceUnion => {
                let h = self.cube.base_size() as usize;
                let levels: Vec<u32> = (0..self.cube.n()).filter(|&s| h << s <= self.max).collect();
                if levels.is_empty() {
                    return self.draw(SetFamily::BfsPrefix, rng);
                }
                let s = levels[rng.below(levels.len() as u64) as usize];
                let class = h << s;
                let classes = count / class;
                let m = 1 + rng.below((self.max / class) as u64) as usize;
                let chosen: BTreeSet<usize> = if rng.below(2) == 0 {
                    let start = rng.below((classes - m + 1) as u64) as usize;
                    (start..start + m).collect()
                } else {
                    let mut c = BTreeSet::new();
                    while c.len() < m {
                        c.insert(rng.below(classes as u64) as usize);
                    }
                    c
                };
                for z in chosen {
                    self.set.extend((z * class) as u32..((z + 1) * class) as u32);
                }
            }
            SetFamily::HammingBall => {
                let n = self.cube.n();
                let h = self.cube.base_size();
                let center = rng.below(1u64 << n) as u32;
                // Largest admissible radius, then a random radius up to it.
                let mut size = 0usize;
                let mut r_max = 0;
                for r in 0..=n {
                    size += binomial(n, r) * h as usize;
                    if size > self.max {
                        break;
                    }
                    r_max = r;
                }
                let r = rng.below(r_max as u64 + 1) as u32;
                for x in 0..count as u32 {
                    if ((x / h) ^ center).count_ones() <= r {
                        self.set.push(x);
                    }
                }
                if self.set.len() > self.max {
                    self.set.truncate(self.max);
                }
            }
        }
        &self.set
    }
}

fn binomial(n: u32, r: u32) -> usize {
    (0..r).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// `2|{x ∈ A : N_k(x) ∈ B}| / (|A| + |B|)`.
///
/// `A` must lie on the 0-side and `B` on the 1-side of coordinate `k` inside
/// one common instance `I_k`.
pub fn matched_fraction(cube: &TwistedCube, a: &[Vertex], b: &[Vertex], k: u32) -> Result<f64> {
    if !(1..=cube.n()).contains(&k) {
        return Err(Error::Generation { k, n: cube.n() });
    }
    let first = a.first().or(b.first()).ok_or(Error::Domain("A and B are both empty"))?;
    let instance = cube.instance_set(*first, k)?;
    let count = cube.vertex_count();
    let mut in_b = BitSet::new(count);
    let mut in_a = BitSet::new(count);
    for (side, set, marks) in [(0u8, a, &mut in_a), (1u8, b, &mut in_b)] {
        for &x in set {
            if !instance.contains(&x.0) {
                return Err(Error::Domain("A and B must lie in one instance I_k"));
            }
            if cube.coordinate(x, k) != side {
                return Err(Error::Domain("A must have coordinate k = 0 and B coordinate k = 1"));
            }
            marks.insert(x.index());
        }
    }
    let matched = in_a.iter().filter(|&x| in_b.contains(cube.neighbor_raw(x as u32, k) as usize)).count();
    Ok(2.0 * matched as f64 / (in_a.count() + in_b.count()) as f64)
}

/// Whether `A, B` are `(k, α)`-badly-matched: matched fraction at least `1 - α`.
pub fn badly_matched(cube: &TwistedCube, a: &[Vertex], b: &[Vertex], k: u32, alpha: f64) -> Result<bool> {
    Ok(matched_fraction(cube, a, b, k)? >= 1.0 - alpha)
}

/// Number of vertices at distance exactly 2 from `v`.
pub fn second_neighborhood<G: Graph>(g: &G, v: Vertex) -> usize {
    let mut first = BTreeSet::new();
    g.for_each_neighbor(v.index(), |w| {
        first.insert(w);
    });
    let mut second = BTreeSet::new();
    for &u in &first {
        g.for_each_neighbor(u, |w| {
            if w != v.index() && !first.contains(&w) {
                second.insert(w);
            }
        });
    }
    second.len()
}
