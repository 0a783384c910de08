use alloc::vec;
use alloc::vec::Vec;

use crate::cube::TwistedCube;
use crate::error::{Error, Result};
use crate::vertex::Vertex;
use crate::{BitSet, Guard};

/// Building the covering DAG is refused above `2^16` vertices.
pub const MAX_ORDER_VERTICES: u64 = 1 << 16;
/// Materializing the full reachability relation is refused above `2^14` vertices.
pub const MAX_CLOSURE_VERTICES: u64 = 1 << 14;

/// The partial order induced by orienting every generation-`k` edge from
/// coordinate `k = 0` to coordinate `k = 1`.
///
/// On `Q_n` this is the coordinatewise order; in general it is the order
/// generated by `(x, 0) < (σ_{n-1}(x), 1)` applied at every level.
#[derive(Debug, Clone)]
pub struct PartialOrder {
    offsets: Vec<u32>,
    successors: Vec<u32>,
    topological: Vec<u32>,
}

/// Builds the covering DAG and checks that it is acyclic.
pub fn partial_order_build(cube: &TwistedCube, guard: Guard) -> Result<PartialOrder> {
    let count = cube.vertex_count();
    guard.check("partial order", count as u64, MAX_ORDER_VERTICES)?;
    let n = cube.n();
    let mut offsets = Vec::with_capacity(count + 1);
    let mut successors = Vec::new();
    let mut indegree = vec![0u32; count];
    offsets.push(0);
    for x in 0..count as u32 {
        for k in 1..=n {
            if cube.coordinate(Vertex(x), k) == 0 {
                let y = cube.neighbor_raw(x, k);
                if cube.coordinate(Vertex(y), k) != 1 || cube.generation(Vertex(x), Vertex(y)) != Ok(k) {
                    return Err(Error::Internal("twist edge does not raise its own coordinate"));
                }
                successors.push(y);
                indegree[y as usize] += 1;
            }
        }
        offsets.push(successors.len() as u32);
    }
    // Kahn's algorithm; leftover vertices would lie on a cycle.
    let mut topological: Vec<u32> = (0..count as u32).filter(|&v| indegree[v as usize] == 0).collect();
    let mut head = 0;
    while head < topological.len() {
        let u = topological[head] as usize;
        head += 1;
        for &w in &successors[offsets[u] as usize..offsets[u + 1] as usize] {
            indegree[w as usize] -= 1;
            if indegree[w as usize] == 0 {
                topological.push(w);
            }
        }
    }
    if topological.len() != count {
        return Err(Error::Internal("oriented twist edges contain a cycle"));
    }
    Ok(PartialOrder { offsets, successors, topological })
}

impl PartialOrder {
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Covering successors of `x`.
    pub fn successors(&self, x: Vertex) -> &[u32] {
        &self.successors[self.offsets[x.index()] as usize..self.offsets[x.index() + 1] as usize]
    }

    pub fn edge_count(&self) -> usize {
        self.successors.len()
    }

    pub fn topological_order(&self) -> &[u32] {
        &self.topological
    }

    /// `x ≤ y` by search along covering edges.
    pub fn le(&self, x: Vertex, y: Vertex) -> bool {
        if x == y {
            return true;
        }
        let mut seen = BitSet::new(self.vertex_count());
        let mut stack = vec![x.0];
        seen.insert(x.index());
        while let Some(u) = stack.pop() {
            for &w in self.successors(Vertex(u)) {
                if w == y.0 {
                    return true;
                }
                if seen.insert(w as usize) {
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Up-sets of every vertex: entry `x` holds all `y ≥ x`.
    pub fn closure(&self, guard: Guard) -> Result<Vec<BitSet>> {
        let count = self.vertex_count();
        guard.check("transitive closure", count as u64, MAX_CLOSURE_VERTICES)?;
        let mut up = vec![BitSet::new(count); count];
        for &x in self.topological.iter().rev() {
            let mut set = BitSet::new(count);
            set.insert(x as usize);
            for &w in self.successors(Vertex(x)) {
                set.union_with(&up[w as usize]);
            }
            up[x as usize] = set;
        }
        Ok(up)
    }

    /// Vertices with no predecessor.
    pub fn minimal_elements(&self) -> Vec<u32> {
        let mut has_pred = BitSet::new(self.vertex_count());
        for &w in &self.successors {
            has_pred.insert(w as usize);
        }
        (0..self.vertex_count() as u32).filter(|&v| !has_pred.contains(v as usize)).collect()
    }

    /// Vertices with no successor.
    pub fn maximal_elements(&self) -> Vec<u32> {
        (0..self.vertex_count() as u32).filter(|&v| self.successors(Vertex(v)).is_empty()).collect()
    }
}
