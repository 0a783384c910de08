//! The σ-twist and the resolved twisted hypercube.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::graph::{Graph, SimpleGraph};
use crate::perm::{PermutationTable, StreamKey};
use crate::vertex::Vertex;
use crate::BitSet;

/// Largest supported number of twist generations.
pub const MAX_DIMENSION: u32 = 28;

/// How the permutations of a cube are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Both instances identical at every level: one permutation per generation.
    Duplicube,
    /// An independent uniform permutation for every generation and copy.
    Independent,
    /// Caller-supplied tables.
    Explicit,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Duplicube => "duplicube",
            Model::Independent => "independent",
            Model::Explicit => "explicit",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "duplicube" => Some(Model::Duplicube),
            "independent" => Some(Model::Independent),
            "explicit" => Some(Model::Explicit),
            _ => None,
        }
    }
}

/// Declarative build recipe for a twisted hypercube.
///
/// Explicit tables are listed by permutation index `j` (the table `σ_j`
/// creates generation `j + 1`), and within one index by copy suffix. Without
/// a base graph `σ_0` acts on a single point and is omitted, so the list
/// starts at `σ_1`; with a base graph of `h` vertices it starts at `σ_0`.
/// A list with one table per index is duplicube-shaped, one per
/// `(index, suffix)` pair is independent-shaped.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistSpec {
    pub model: Model,
    pub n: u32,
    pub seed: u64,
    pub permutations: Option<Vec<Vec<u32>>>,
    pub base: Option<SimpleGraph>,
}

impl TwistSpec {
    pub fn duplicube(n: u32, seed: u64) -> Self {
        TwistSpec { model: Model::Duplicube, n, seed, permutations: None, base: None }
    }

    pub fn independent(n: u32, seed: u64) -> Self {
        TwistSpec { model: Model::Independent, n, seed, permutations: None, base: None }
    }

    pub fn explicit(n: u32, tables: Vec<Vec<u32>>) -> Self {
        TwistSpec { model: Model::Explicit, n, seed: 0, permutations: Some(tables), base: None }
    }

    /// Explicit spec with identity permutations, i.e. `Q_n`.
    pub fn hypercube(n: u32) -> Self {
        Self::explicit(n, (1..n).map(|j| (0..1u32 << j).collect()).collect())
    }

    pub fn with_base(mut self, base: SimpleGraph) -> Self {
        self.base = Some(base);
        self
    }

    fn base_size(&self) -> usize {
        self.base.as_ref().map_or(1, |b| b.vertex_count())
    }

    /// First permutation index carried by explicit tables.
    pub fn first_table_index(&self) -> u32 {
        if self.base_size() > 1 {
            0
        } else {
            1
        }
    }

    /// Number of tables in a duplicube-shaped and an independent-shaped list.
    pub fn explicit_table_counts(&self) -> (usize, usize) {
        let first = self.first_table_index();
        let shared = (first..self.n).count();
        let per_copy = (first..self.n).map(|j| 1usize << (self.n - j - 1)).sum();
        (shared, per_copy)
    }
}

enum Level {
    Identity,
    Shared(PermutationTable),
    PerCopy(Vec<PermutationTable>),
    Lazy { key_seed: u64, copies: Vec<OnceBox<PermutationTable>> },
}

impl core::fmt::Debug for Level {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Level::Identity => f.write_str("Identity"),
            Level::Shared(t) => write!(f, "Shared(len {})", t.len()),
            Level::PerCopy(v) => write!(f, "PerCopy({} tables)", v.len()),
            Level::Lazy { copies, .. } => write!(f, "Lazy({} slots)", copies.len()),
        }
    }
}

/// A resolved twisted hypercube with total neighbor functions.
///
/// Vertex `x` is encoded as `b + h·w` where `h` is the base graph size
/// (1 without a base graph), `b < h` the base vertex and `w` the `n`-bit
/// coordinate word. Immutable after construction; lazily generated tables of
/// the independent model are filled idempotently, so all queries may run
/// concurrently.
#[derive(Debug)]
pub struct TwistedCube {
    spec: TwistSpec,
    n: u32,
    base_size: u32,
    base_shift: Option<u32>,
    levels: Vec<Level>,
}

/// Builds the cube described by `spec`. Deterministic in `spec`.
pub fn build_cube(spec: &TwistSpec) -> Result<TwistedCube> {
    TwistedCube::build(spec.clone())
}

impl TwistedCube {
    pub fn build(spec: TwistSpec) -> Result<Self> {
        let n = spec.n;
        if !(1..=MAX_DIMENSION).contains(&n) {
            return Err(Error::DimensionRange(n, MAX_DIMENSION));
        }
        let h = spec.base_size();
        if h == 0 {
            return Err(Error::BaseGraph("base graph has no vertices".into()));
        }
        if (h as u64) << n > 1u64 << 31 {
            return Err(Error::Dimension("base size times 2^n exceeds 2^31 vertices"));
        }
        let h = h as u32;
        let unit = |k: u32| (h as usize) << (k - 1);
        let copies = |k: u32| 1usize << (n - k);

        let mut levels = Vec::with_capacity(n as usize);
        match spec.model {
            Model::Duplicube => {
                for k in 1..=n {
                    if unit(k) == 1 {
                        levels.push(Level::Identity);
                    } else {
                        let key = StreamKey::new(spec.seed, k - 1, 0);
                        levels.push(Level::Shared(PermutationTable::uniform(key, unit(k))));
                    }
                }
            }
            Model::Independent => {
                for k in 1..=n {
                    if unit(k) == 1 {
                        levels.push(Level::Identity);
                    } else {
                        let slots = (0..copies(k)).map(|_| OnceBox::new()).collect();
                        levels.push(Level::Lazy { key_seed: spec.seed, copies: slots });
                    }
                }
            }
            Model::Explicit => {
                let tables = spec
                    .permutations
                    .as_ref()
                    .ok_or_else(|| Error::PermutationSet("explicit model without tables".into()))?;
                let (shared, per_copy) = spec.explicit_table_counts();
                let first = spec.first_table_index();
                if first == 1 {
                    levels.push(Level::Identity);
                }
                let mut it = tables.iter();
                let mut take = |j: u32| -> Result<PermutationTable> {
                    let t = it.next().ok_or_else(|| Error::PermutationSet("too few tables".into()))?;
                    let want = unit(j + 1);
                    if t.len() != want {
                        return Err(Error::PermutationSet(format!(
                            "table for sigma_{j} has {} entries, expected {want}",
                            t.len()
                        )));
                    }
                    PermutationTable::from_image(t.clone())
                };
                if tables.len() == shared {
                    for j in first..n {
                        levels.push(Level::Shared(take(j)?));
                    }
                } else if tables.len() == per_copy {
                    for j in first..n {
                        let per = (0..copies(j + 1)).map(|_| take(j)).collect::<Result<Vec<_>>>()?;
                        levels.push(Level::PerCopy(per));
                    }
                } else {
                    return Err(Error::PermutationSet(format!(
                        "got {} tables, expected {shared} (one per generation) or {per_copy} (one per generation and copy)",
                        tables.len()
                    )));
                }
            }
        }
        Ok(TwistedCube {
            n,
            base_size: h,
            base_shift: h.is_power_of_two().then(|| h.trailing_zeros()),
            levels,
            spec,
        })
    }

    pub fn spec(&self) -> &TwistSpec {
        &self.spec
    }

    /// Number of twist generations.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn base_size(&self) -> u32 {
        self.base_size
    }

    pub fn base(&self) -> Option<&SimpleGraph> {
        self.spec.base.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        (self.base_size as usize) << self.n
    }

    /// Number of vertices in one instance of generation `k`'s prefix space.
    #[inline]
    fn unit(&self, k: u32) -> u32 {
        self.base_size << (k - 1)
    }

    /// Splits `x` into (prefix, coordinate k, suffix) for generation `k`.
    #[inline]
    fn split(&self, x: u32, k: u32) -> (u32, u32, u32) {
        match self.base_shift {
            Some(s) => {
                let sh = s + k - 1;
                (x & ((1 << sh) - 1), (x >> sh) & 1, x >> (sh + 1))
            }
            None => {
                let u = self.unit(k);
                (x % u, (x / u) & 1, x / (2 * u))
            }
        }
    }

    #[inline]
    fn join(&self, prefix: u32, bit: u32, suffix: u32, k: u32) -> u32 {
        let u = self.unit(k);
        prefix + u * (bit + 2 * suffix)
    }

    /// The permutation `σ_{k-1}` that creates generation-`k` edges in the copy
    /// with the given suffix.
    pub fn twist_table(&self, k: u32, suffix: u32) -> Option<&PermutationTable> {
        match &self.levels[(k - 1) as usize] {
            Level::Identity => None,
            Level::Shared(t) => Some(t),
            Level::PerCopy(v) => Some(&v[suffix as usize]),
            Level::Lazy { key_seed, copies } => Some(copies[suffix as usize].get_or_init(|| {
                let key = StreamKey::new(*key_seed, k - 1, suffix as u64);
                Box::new(PermutationTable::uniform(key, self.unit(k) as usize))
            })),
        }
    }

    /// Fills every lazily generated table.
    pub fn materialize(&self) {
        for k in 1..=self.n {
            if let Level::Lazy { copies, .. } = &self.levels[(k - 1) as usize] {
                for s in 0..copies.len() {
                    self.twist_table(k, s as u32);
                }
            }
        }
    }

    #[inline]
    fn check_vertex(&self, x: Vertex) -> Result<()> {
        if x.index() >= self.vertex_count() {
            return Err(Error::VertexRange { vertex: x.0 as u64, count: self.vertex_count() as u64 });
        }
        Ok(())
    }

    #[inline]
    fn check_generation(&self, k: u32) -> Result<()> {
        if !(1..=self.n).contains(&k) {
            return Err(Error::Generation { k, n: self.n });
        }
        Ok(())
    }

    /// The unique generation-`k` neighbor `N_k(x)`.
    pub fn neighbor_k(&self, x: Vertex, k: u32) -> Result<Vertex> {
        self.check_vertex(x)?;
        self.check_generation(k)?;
        Ok(Vertex(self.neighbor_raw(x.0, k)))
    }

    /// Unchecked `N_k(x)`; `x` and `k` must be in range.
    #[inline]
    pub fn neighbor_raw(&self, x: u32, k: u32) -> u32 {
        let (p, b, s) = self.split(x, k);
        let q = match self.twist_table(k, s) {
            None => p,
            Some(t) if b == 0 => t.apply(p),
            Some(t) => t.apply_inverse(p),
        };
        self.join(q, b ^ 1, s, k)
    }

    /// Twist neighbors in generation order followed by base neighbors.
    pub fn neighbors(&self, x: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(x)?;
        let mut out = Vec::with_capacity(self.degree_raw(x.0));
        self.for_each_neighbor(x.index(), |y| out.push(Vertex(y as u32)));
        Ok(out)
    }

    fn degree_raw(&self, x: u32) -> usize {
        self.n as usize + self.spec.base.as_ref().map_or(0, |b| b.degree((x % self.base_size) as usize))
    }

    /// Generation of the pair `(x, y)`: the largest differing coordinate, or 0
    /// when only the base vertex differs.
    pub fn generation(&self, x: Vertex, y: Vertex) -> Result<u32> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::Domain("generation number of a vertex with itself"));
        }
        let (wx, wy) = (x.0 / self.base_size, y.0 / self.base_size);
        Ok(32 - (wx ^ wy).leading_zeros())
    }

    /// Coordinate `i` (1-based) of `x`.
    pub fn coordinate(&self, x: Vertex, i: u32) -> u8 {
        ((x.0 / self.base_size) >> (i - 1) & 1) as u8
    }

    /// The vertices sharing coordinates `s+1..=n` with `x`.
    pub fn instance_set(&self, x: Vertex, s: u32) -> Result<core::ops::Range<u32>> {
        self.check_vertex(x)?;
        if s > self.n {
            return Err(Error::Domain("instance set level s exceeds n"));
        }
        let size = (self.base_size as u64) << s;
        let start = x.0 as u64 / size * size;
        Ok(start as u32..(start + size) as u32)
    }

    /// `B(v, r)`, sorted.
    pub fn ball(&self, v: Vertex, r: u32) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        Ok(self.bounded_bfs(v.0, r, self.n + 1))
    }

    /// `B_{<k}(v, r)`: reachable within `r` steps using edges of generation `< k`.
    pub fn restricted_ball(&self, v: Vertex, r: u32, k: u32) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        self.check_generation(k)?;
        Ok(self.bounded_bfs(v.0, r, k))
    }

    fn bounded_bfs(&self, v: u32, r: u32, below: u32) -> Vec<Vertex> {
        let mut seen = BitSet::new(self.vertex_count());
        seen.insert(v as usize);
        let mut frontier = vec![v];
        let mut all = vec![Vertex(v)];
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                self.for_each_neighbor_below(u, below, |w| {
                    if seen.insert(w as usize) {
                        next.push(w);
                        all.push(Vertex(w));
                    }
                });
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        all.sort_unstable();
        all
    }

    /// Neighbors through edges of generation `< below` (base edges count as 0).
    #[inline]
    pub(crate) fn for_each_neighbor_below(&self, x: u32, below: u32, mut f: impl FnMut(u32)) {
        for k in 1..below.min(self.n + 1) {
            f(self.neighbor_raw(x, k));
        }
        if let Some(b) = &self.spec.base {
            let local = x % self.base_size;
            let offset = x - local;
            for &w in b.neighbors(local as usize) {
                f(offset + w);
            }
        }
    }

    /// Materializes the adjacency in generation order.
    pub fn to_graph(&self) -> SimpleGraph {
        let count = self.vertex_count();
        let mut offsets = Vec::with_capacity(count + 1);
        let mut targets = Vec::with_capacity(count * self.n as usize);
        offsets.push(0u32);
        for x in 0..count {
            self.for_each_neighbor(x, |y| targets.push(y as u32));
            offsets.push(targets.len() as u32);
        }
        SimpleGraph::from_csr(offsets, targets)
    }

    /// Edges `u < v` in generation-`k` matching order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |x| {
            let mut v = Vec::with_capacity(self.degree_raw(x));
            self.for_each_neighbor(x as usize, |y| {
                if (x as usize) < y {
                    v.push((x, y as u32));
                }
            });
            v.into_iter()
        })
    }
}

impl Graph for TwistedCube {
    fn vertex_count(&self) -> usize {
        TwistedCube::vertex_count(self)
    }

    fn degree(&self, v: usize) -> usize {
        self.degree_raw(v as u32)
    }

    #[inline]
    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize)) {
        self.for_each_neighbor_below(v as u32, self.n + 1, |w| f(w as usize));
    }
}

/// The σ-twist `G_0 ⋆_σ G_1`: vertex `x` of `g0` becomes `x`, vertex `x` of
/// `g1` becomes `m + x`, and `x` is joined to `m + σ(x)`.
pub fn sigma_twist(g0: &SimpleGraph, g1: &SimpleGraph, sigma: &PermutationTable) -> Result<SimpleGraph> {
    let m = g0.vertex_count();
    if g1.vertex_count() != m || sigma.len() != m {
        return Err(Error::Dimension("sigma-twist needs equal vertex counts and a permutation of that size"));
    }
    let mut lists = Vec::with_capacity(2 * m);
    for x in 0..m {
        let mut l = g0.neighbors(x).to_vec();
        l.push(m as u32 + sigma.apply(x as u32));
        lists.push(l);
    }
    for x in 0..m {
        let mut l: Vec<u32> = g1.neighbors(x).iter().map(|&w| w + m as u32).collect();
        l.push(sigma.apply_inverse(x as u32));
        lists.push(l);
    }
    Ok(SimpleGraph::pack(&lists))
}
