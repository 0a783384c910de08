//! Individualization–refinement search for a strong generating set.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::graph::{Graph, SimpleGraph};
use crate::perm::mix64;
use crate::BitSet;

/// Adjacency rows as bit sets for constant-time edge tests.
pub(crate) struct Adjacency {
    rows: Vec<BitSet>,
}

impl Adjacency {
    pub(crate) fn new(g: &SimpleGraph) -> Self {
        let count = g.vertex_count();
        let rows = (0..count)
            .map(|v| BitSet::from_iter_with_len(count, g.neighbors(v).iter().map(|&w| w as usize)))
            .collect();
        Adjacency { rows }
    }

    pub(crate) fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }
}

/// Whether `phi` maps edges to edges (and so, being a bijection on a finite
/// graph, non-edges to non-edges).
pub(crate) fn preserves_edges(g: &SimpleGraph, adj: &Adjacency, phi: &[u32]) -> bool {
    if phi.len() != g.vertex_count() {
        return false;
    }
    let mut seen = vec![false; phi.len()];
    for &x in phi {
        if x as usize >= phi.len() || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    g.edges().all(|(u, v)| adj.has_edge(phi[u as usize] as usize, phi[v as usize] as usize))
}

#[derive(Clone)]
struct Node {
    colors: Vec<u32>,
    cells: usize,
    invariant: u64,
}

impl Node {
    fn is_discrete(&self) -> bool {
        self.cells == self.colors.len()
    }

    /// Smallest non-singleton cell, lowest color on ties; members ascending.
    fn target_cell(&self) -> (u32, Vec<u32>) {
        let mut sizes = vec![0usize; self.cells];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        let color = (0..self.cells).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c)).expect("non-discrete") as u32;
        let members = (0..self.colors.len() as u32).filter(|&v| self.colors[v as usize] == color).collect();
        (color, members)
    }
}

pub(crate) struct Search<'a> {
    g: &'a SimpleGraph,
    adj: Adjacency,
    second: Vec<Vec<u32>>,
    path: Vec<Node>,
    pub(crate) generators: Vec<Vec<u32>>,
    pub(crate) base: Vec<u32>,
    pub(crate) orbit_sizes: Vec<usize>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(g: &'a SimpleGraph) -> Self {
        let count = g.vertex_count();
        let adj = Adjacency::new(g);
        // Vertices at distance exactly two.
        let mut second = Vec::with_capacity(count);
        let mut mark = vec![usize::MAX; count];
        for v in 0..count {
            mark[v] = v;
            for &w in g.neighbors(v) {
                mark[w as usize] = v;
            }
            let mut list = Vec::new();
            for &w in g.neighbors(v) {
                for &u in g.neighbors(w as usize) {
                    if mark[u as usize] != v {
                        mark[u as usize] = v;
                        list.push(u);
                    }
                }
            }
            second.push(list);
        }
        Search { g, adj, second, path: Vec::new(), generators: Vec::new(), base: Vec::new(), orbit_sizes: Vec::new() }
    }

    pub(crate) fn adjacency(&self) -> &Adjacency {
        &self.adj
    }

    /// Splits cells by sorted neighbor colors until stable, then by colors at
    /// distance two, repeating while anything splits.
    fn refine(&self, colors: &mut [u32]) -> Node {
        let count = colors.len();
        let mut cells = count_cells(colors);
        let mut sig: Vec<Vec<u32>> = vec![Vec::new(); count];
        let mut order: Vec<u32> = (0..count as u32).collect();
        let mut use_second = false;
        loop {
            for v in 0..count {
                let s = &mut sig[v];
                s.clear();
                s.push(colors[v]);
                let start = s.len();
                let list: &[u32] = if use_second { &self.second[v] } else { self.g.neighbors(v) };
                s.extend(list.iter().map(|&w| colors[w as usize]));
                s[start..].sort_unstable();
            }
            order.sort_by(|&a, &b| sig[a as usize].cmp(&sig[b as usize]));
            let mut next = 0u32;
            let mut fresh = vec![0u32; count];
            for (i, &v) in order.iter().enumerate() {
                if i > 0 && sig[v as usize] != sig[order[i - 1] as usize] {
                    next += 1;
                }
                fresh[v as usize] = next;
            }
            let new_cells = next as usize + 1;
            colors.copy_from_slice(&fresh);
            if new_cells > cells {
                cells = new_cells;
                use_second = false;
            } else if !use_second {
                use_second = true;
            } else {
                break;
            }
            if cells == count {
                break;
            }
        }
        let invariant = self.invariant(colors, cells);
        Node { colors: colors.to_vec(), cells, invariant }
    }

    /// Cell sizes and each cell's neighbor-color profile, hashed.
    fn invariant(&self, colors: &[u32], cells: usize) -> u64 {
        let mut first = vec![u32::MAX; cells];
        let mut sizes = vec![0u64; cells];
        for (v, &c) in colors.iter().enumerate() {
            sizes[c as usize] += 1;
            if first[c as usize] == u32::MAX {
                first[c as usize] = v as u32;
            }
        }
        let mut h = mix64(cells as u64);
        for c in 0..cells {
            h = mix64(h ^ sizes[c]);
            let mut nb: Vec<u32> = self.g.neighbors(first[c] as usize).iter().map(|&w| colors[w as usize]).collect();
            nb.sort_unstable();
            for x in nb {
                h = mix64(h ^ (x as u64 + 1));
            }
        }
        h
    }

    fn individualize(&self, node: &Node, v: u32) -> Node {
        let mut colors = node.colors.clone();
        colors[v as usize] = node.cells as u32;
        self.refine(&mut colors)
    }

    /// Runs the search; afterwards `generators` is a strong generating set
    /// relative to `base`, and the group order is the product of `orbit_sizes`.
    pub(crate) fn run(&mut self) {
        let count = self.g.vertex_count();
        if count == 0 {
            return;
        }
        let mut colors = vec![0u32; count];
        let mut node = self.refine(&mut colors);
        let mut cells_path = Vec::new();
        self.path.push(node.clone());
        while !node.is_discrete() {
            let (_, members) = node.target_cell();
            let b = members[0];
            self.base.push(b);
            cells_path.push(members);
            node = self.individualize(&node, b);
            self.path.push(node.clone());
        }
        let leaf_inverse = inverse_labeling(&node.colors);

        let depth = self.base.len();
        self.orbit_sizes = vec![1; depth];
        let mut uf = UnionFind::new(count);
        for level in (0..depth).rev() {
            let b = self.base[level];
            let mut failed: Vec<u32> = Vec::new();
            for &w in &cells_path[level] {
                if uf.find(w) == uf.find(b) || failed.iter().any(|&f| uf.find(f) == uf.find(w)) {
                    continue;
                }
                let child = self.individualize(&self.path[level], w);
                match self.explore(child, level + 1, &leaf_inverse) {
                    Some(phi) => {
                        for (x, &y) in phi.iter().enumerate() {
                            uf.union(x as u32, y);
                        }
                        self.generators.push(phi);
                    }
                    None => failed.push(w),
                }
            }
            let root = uf.find(b);
            self.orbit_sizes[level] = cells_path[level].iter().filter(|&&v| uf.find(v) == root).count();
        }
    }

    /// Looks below `node` (at path depth `depth`) for a leaf whose labeling
    /// against the first leaf is an automorphism.
    fn explore(&self, node: Node, depth: usize, leaf_inverse: &[u32]) -> Option<Vec<u32>> {
        if node.invariant != self.path[depth].invariant || node.cells != self.path[depth].cells {
            return None;
        }
        if node.is_discrete() {
            let other = inverse_labeling(&node.colors);
            let mut phi = vec![0u32; other.len()];
            for c in 0..other.len() {
                phi[leaf_inverse[c] as usize] = other[c];
            }
            return preserves_edges(self.g, &self.adj, &phi).then_some(phi);
        }
        let (_, members) = node.target_cell();
        for u in members {
            let child = self.individualize(&node, u);
            if let Some(phi) = self.explore(child, depth + 1, leaf_inverse) {
                return Some(phi);
            }
        }
        None
    }

    pub(crate) fn order(&self) -> BigUint {
        self.orbit_sizes.iter().fold(BigUint::from(1u32), |acc, &s| acc * BigUint::from(s))
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// For a discrete coloring, the vertex carrying each color.
fn inverse_labeling(colors: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; colors.len()];
    for (v, &c) in colors.iter().enumerate() {
        inv[c as usize] = v as u32;
    }
    inv
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}
