//! Plain undirected graphs in compressed sparse row form.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Read access to a finite undirected graph on `0..vertex_count()`.
pub trait Graph {
    fn vertex_count(&self) -> usize;

    fn degree(&self, v: usize) -> usize;

    fn for_each_neighbor(&self, v: usize, f: impl FnMut(usize));

    /// Breadth-first distances from `source`; unreachable vertices get `u32::MAX`.
    fn bfs_distances(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u] + 1;
            self.for_each_neighbor(u, |w| {
                if dist[w] == u32::MAX {
                    dist[w] = d;
                    queue.push_back(w);
                }
            });
        }
        dist
    }
}

/// Simple undirected graph: symmetric adjacency, no loops, no parallel edges.
///
/// Neighbor order is preserved from construction; for graphs materialized
/// from a twisted cube it is generation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl SimpleGraph {
    /// Validates and packs adjacency lists.
    pub fn from_adjacency(adjacency: &[Vec<u32>]) -> Result<Self> {
        let m = adjacency.len();
        for (u, list) in adjacency.iter().enumerate() {
            for (i, &v) in list.iter().enumerate() {
                if v as usize >= m {
                    return Err(Error::BaseGraph(format!("vertex {u} lists out-of-range neighbor {v}")));
                }
                if v as usize == u {
                    return Err(Error::BaseGraph(format!("self-loop at vertex {u}")));
                }
                if list[..i].contains(&v) {
                    return Err(Error::BaseGraph(format!("vertex {u} lists {v} twice")));
                }
                if !adjacency[v as usize].contains(&(u as u32)) {
                    return Err(Error::BaseGraph(format!("edge {u}-{v} is not symmetric")));
                }
            }
        }
        Ok(Self::pack(adjacency))
    }

    pub(crate) fn pack(adjacency: &[Vec<u32>]) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        let mut targets = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        offsets.push(0);
        for list in adjacency {
            targets.extend_from_slice(list);
            offsets.push(targets.len() as u32);
        }
        SimpleGraph { offsets, targets }
    }

    pub(crate) fn from_csr(offsets: Vec<u32>, targets: Vec<u32>) -> Self {
        SimpleGraph { offsets, targets }
    }

    /// Builds from an undirected edge list.
    pub fn from_edges(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u as usize >= vertex_count || v as usize >= vertex_count {
                return Err(Error::BaseGraph(format!("edge {u}-{v} outside 0..{vertex_count}")));
            }
            if u == v {
                return Err(Error::BaseGraph(format!("self-loop at vertex {u}")));
            }
            if adjacency[u as usize].contains(&v) {
                return Err(Error::BaseGraph(format!("duplicate edge {u}-{v}")));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        Ok(Self::pack(&adjacency))
    }

    /// A single vertex with no edges.
    pub fn singleton() -> Self {
        SimpleGraph { offsets: vec![0, 0], targets: Vec::new() }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).contains(&(v as u32))
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Edges as `(u, v)` with `u < v`, ordered by `u` then neighbor order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u).iter().filter(move |&&v| (u as u32) < v).map(move |&v| (u as u32, v))
        })
    }

    /// Edges with `u < v`, sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<(u32, u32)> {
        let mut e: Vec<_> = self.edges().collect();
        e.sort_unstable();
        e
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        (0..self.vertex_count()).map(|v| self.neighbors(v).to_vec()).collect()
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.vertex_count()).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Same vertex count and same edge set, regardless of neighbor order.
    pub fn same_edges(&self, other: &SimpleGraph) -> bool {
        self.vertex_count() == other.vertex_count() && self.sorted_edges() == other.sorted_edges()
    }

    /// Largest distance from `source`, or `None` if some vertex is unreachable.
    pub fn eccentricity(&self, source: usize) -> Option<u32> {
        let dist = self.bfs_distances(source);
        let max = dist.iter().copied().max().unwrap_or(0);
        (max != u32::MAX).then_some(max)
    }
}

impl Graph for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    fn degree(&self, v: usize) -> usize {
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    #[inline]
    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize)) {
        for &w in self.neighbors(v) {
            f(w as usize);
        }
    }
}

/// `Q_n` built directly from Hamming adjacency.
pub fn hypercube(n: u32) -> SimpleGraph {
    let lists: Vec<Vec<u32>> = (0..1u32 << n).map(|x| (0..n).map(|b| x ^ (1 << b)).collect()).collect();
    SimpleGraph::pack(&lists)
}

/// The cycle `C_m`.
pub fn cycle(m: usize) -> SimpleGraph {
    let lists: Vec<Vec<u32>> =
        (0..m).map(|i| vec![((i + m - 1) % m) as u32, ((i + 1) % m) as u32]).collect();
    SimpleGraph::pack(&lists)
}
