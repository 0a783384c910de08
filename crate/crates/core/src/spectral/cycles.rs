//! Counting short simple cycles through a vertex.

use alloc::vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Guard;

/// Longest cycle length accepted without a guard override.
pub const MAX_CYCLE_LENGTH: u32 = 8;

/// Number of distinct simple cycles of length `3..=k` that contain `v`.
///
/// Each cycle is counted once regardless of orientation: the search walks
/// simple paths out of `v`, counts closures back to `v`, and halves the
/// total because every cycle closes in both directions.
pub fn cycle_count<G: Graph>(g: &G, v: usize, k: u32, guard: Guard) -> Result<u64> {
    guard.check("cycle length", k as u64, MAX_CYCLE_LENGTH as u64)?;
    if v >= g.vertex_count() {
        return Err(Error::VertexRange { vertex: v as u64, count: g.vertex_count() as u64 });
    }
    if k < 3 {
        return Ok(0);
    }
    let dist = g.bfs_distances(v);
    let mut on_path = vec![false; g.vertex_count()];
    on_path[v] = true;
    let mut closures = 0u64;
    extend(g, v, v, 0, k, &dist, &mut on_path, &mut closures);
    Ok(closures / 2)
}

#[allow(clippy::too_many_arguments)]
fn extend<G: Graph>(
    g: &G,
    root: usize,
    u: usize,
    length: u32,
    k: u32,
    dist: &[u32],
    on_path: &mut [bool],
    closures: &mut u64,
) {
    let mut next = vec![];
    g.for_each_neighbor(u, |w| next.push(w));
    for w in next {
        if w == root {
            if length + 1 >= 3 {
                *closures += 1;
            }
            continue;
        }
        // After stepping to w, the walk back to the root needs dist[w] more edges.
        if on_path[w] || length + 1 + dist[w] > k {
            continue;
        }
        on_path[w] = true;
        extend(g, root, w, length + 1, k, dist, on_path, closures);
        on_path[w] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{build_cube, TwistSpec};
    use crate::graph::{cycle, hypercube, SimpleGraph};
    use alloc::vec::Vec;
    use std::collections::BTreeSet;

    /// Every simple cycle of length ≤ k, as canonical vertex sequences.
    fn all_cycles(g: &SimpleGraph, k: usize) -> BTreeSet<Vec<usize>> {
        fn go(g: &SimpleGraph, path: &mut Vec<usize>, k: usize, out: &mut BTreeSet<Vec<usize>>) {
            let start = path[0];
            let last = *path.last().unwrap();
            for &w in g.neighbors(last) {
                let w = w as usize;
                if w == start && path.len() >= 3 {
                    // Canonical: smallest vertex first, then the smaller neighbor next.
                    if path[1] < *path.last().unwrap() {
                        out.insert(path.clone());
                    }
                } else if w > start && !path.contains(&w) && path.len() < k {
                    path.push(w);
                    go(g, path, k, out);
                    path.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        for s in 0..g.vertex_count() {
            go(g, &mut vec![s], k, &mut out);
        }
        out
    }

    fn oracle(g: &SimpleGraph, v: usize, k: usize) -> u64 {
        all_cycles(g, k).iter().filter(|c| c.contains(&v)).count() as u64
    }

    #[test]
    fn small_graphs() {
        let c5 = cycle(5);
        assert_eq!(cycle_count(&c5, 0, 4, Guard::Enforce).unwrap(), 0);
        assert_eq!(cycle_count(&c5, 0, 5, Guard::Enforce).unwrap(), 1);
        let k4 = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        // Three triangles and three 4-cycles through each vertex.
        assert_eq!(cycle_count(&k4, 0, 3, Guard::Enforce).unwrap(), 3);
        assert_eq!(cycle_count(&k4, 0, 4, Guard::Enforce).unwrap(), 6);
    }

    #[test]
    fn hypercube_four_cycles() {
        for n in 2..=6u32 {
            let q = hypercube(n);
            let want = (n * (n - 1) / 2) as u64;
            assert_eq!(cycle_count(&q, 0, 4, Guard::Enforce).unwrap(), want);
            assert_eq!(cycle_count(&q, 5 % q.vertex_count(), 3, Guard::Enforce).unwrap(), 0);
            assert_eq!(oracle(&q, 0, 4), want);
        }
    }

    #[test]
    fn matches_global_enumeration() {
        for seed in 0..4 {
            let cube = build_cube(&TwistSpec::independent(5, seed)).unwrap();
            let g = cube.to_graph();
            for k in 3..=6u32 {
                for v in [0usize, 7, 31] {
                    assert_eq!(cycle_count(&cube, v, k, Guard::Enforce).unwrap(), oracle(&g, v, k as usize));
                }
            }
        }
    }

    #[test]
    fn guard_and_range() {
        let q = hypercube(3);
        assert!(cycle_count(&q, 0, 9, Guard::Enforce).is_err());
        assert!(cycle_count(&q, 8, 4, Guard::Enforce).is_err());
        assert_eq!(cycle_count(&q, 0, 2, Guard::Enforce).unwrap(), 0);
    }
}
