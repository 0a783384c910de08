use alloc::vec;
use alloc::vec::Vec;

use crate::cube::TwistedCube;
use crate::error::{Error, Result};
use crate::graph::{Graph, SimpleGraph};
use crate::perm::StreamKey;
use crate::vertex::Vertex;
use crate::Guard;

/// Exact all-sources diameter is refused above `2^16` vertices unless overridden.
pub const MAX_EXACT_DIAMETER_VERTICES: u64 = 1 << 16;

const LANES: usize = 4;
const SAMPLE_TAG: u32 = 0x4449_414d;

pub fn bfs_distances<G: Graph>(g: &G, source: Vertex) -> Vec<u32> {
    g.bfs_distances(source.index())
}

/// Largest distance from `v`; `None` if the graph is disconnected.
pub fn eccentricity<G: Graph>(g: &G, v: Vertex) -> Option<u32> {
    let d = g.bfs_distances(v.index());
    let max = d.iter().copied().max().unwrap_or(0);
    (max != u32::MAX).then_some(max)
}

/// `ceil((n-1)/log2 n)`, the counting lower bound on the diameter of any
/// `n`-regular graph on `2^n` vertices; 1 for `n = 1`.
pub fn diameter_lower_bound(n: u32) -> u32 {
    if n <= 1 {
        return n;
    }
    let q = (n - 1) as f64 / libm::log2(n as f64);
    let c = libm::ceil(q - 1e-12) as u32;
    c.max(1)
}

/// Eccentricity of every vertex by bit-parallel BFS, `64·LANES` sources at a time.
pub fn eccentricities(g: &SimpleGraph) -> Result<Vec<u32>> {
    let count = g.vertex_count();
    let mut ecc = vec![0u32; count];
    let mut visited = vec![[0u64; LANES]; count];
    let mut frontier = vec![[0u64; LANES]; count];
    let mut next = vec![[0u64; LANES]; count];
    let batch = 64 * LANES;
    for start in (0..count).step_by(batch) {
        let end = (start + batch).min(count);
        for w in visited.iter_mut().chain(frontier.iter_mut()) {
            *w = [0; LANES];
        }
        let mut full = [0u64; LANES];
        for s in start..end {
            let bit = s - start;
            visited[s][bit / 64] |= 1 << (bit % 64);
            frontier[s][bit / 64] |= 1 << (bit % 64);
            full[bit / 64] |= 1 << (bit % 64);
        }
        let mut level = 0u32;
        loop {
            let mut reached = [0u64; LANES];
            for v in 0..count {
                let mut acc = [0u64; LANES];
                for &u in g.neighbors(v) {
                    let f = &frontier[u as usize];
                    for l in 0..LANES {
                        acc[l] |= f[l];
                    }
                }
                let vis = &mut visited[v];
                for l in 0..LANES {
                    acc[l] &= !vis[l];
                    vis[l] |= acc[l];
                    reached[l] |= acc[l];
                }
                next[v] = acc;
            }
            if reached.iter().all(|&w| w == 0) {
                break;
            }
            level += 1;
            for l in 0..LANES {
                let mut w = reached[l];
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    ecc[start + l * 64 + b] = level;
                }
            }
            core::mem::swap(&mut frontier, &mut next);
        }
        if visited.iter().any(|vis| (0..LANES).any(|l| vis[l] & full[l] != full[l])) {
            return Err(Error::Domain("graph is disconnected"));
        }
    }
    Ok(ecc)
}

/// Exact diameter as the largest eccentricity.
pub fn diameter_exact(g: &SimpleGraph, guard: Guard) -> Result<u32> {
    guard.check("exact diameter", g.vertex_count() as u64, MAX_EXACT_DIAMETER_VERTICES)?;
    Ok(eccentricities(g)?.into_iter().max().unwrap_or(0))
}

/// Sampled diameter bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterBounds {
    /// Largest eccentricity seen from sampled sources and double sweeps,
    /// never below the counting bound.
    pub lower: u32,
    /// `n` plus the base graph diameter (the greedy routing bound).
    pub upper: u32,
    /// Largest eccentricity actually observed.
    pub observed: u32,
    pub sources: usize,
}

/// Brackets the diameter using `samples` random sources, each followed by a
/// double sweep from its farthest vertex.
pub fn diameter_bounds(cube: &TwistedCube, samples: usize, seed: u64) -> Result<DiameterBounds> {
    let count = cube.vertex_count();
    let mut stream = StreamKey::new(seed, SAMPLE_TAG, 0).stream();
    let mut observed = 0;
    let mut sources = 0;
    for _ in 0..samples.max(1) {
        let s = stream.below(count as u64) as usize;
        let d = cube.bfs_distances(s);
        sources += 1;
        let (far, e) = farthest(&d)?;
        observed = observed.max(e);
        let d2 = cube.bfs_distances(far);
        sources += 1;
        observed = observed.max(farthest(&d2)?.1);
    }
    let base_diameter = match cube.base() {
        Some(b) if b.vertex_count() > 1 => {
            (0..b.vertex_count()).filter_map(|v| b.eccentricity(v)).max().unwrap_or(0)
        }
        _ => 0,
    };
    let floor = if cube.base_size() == 1 { diameter_lower_bound(cube.n()) } else { 1 };
    Ok(DiameterBounds { lower: observed.max(floor), upper: cube.n() + base_diameter, observed, sources })
}

fn farthest(d: &[u32]) -> Result<(usize, u32)> {
    let (v, &e) = d.iter().enumerate().max_by_key(|&(i, &x)| (x, core::cmp::Reverse(i))).unwrap();
    if e == u32::MAX {
        return Err(Error::Domain("graph is disconnected"));
    }
    Ok((v, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{build_cube, TwistSpec};
    use crate::graph::{cycle, hypercube};

    #[test]
    fn lower_bound_values() {
        // (n-1)/log2 n: n=2 → 1, n=4 → 1.5, n=10 → 2.709, n=14 → 3.424
        assert_eq!(diameter_lower_bound(1), 1);
        assert_eq!(diameter_lower_bound(2), 1);
        assert_eq!(diameter_lower_bound(4), 2);
        assert_eq!(diameter_lower_bound(8), 3);
        assert_eq!(diameter_lower_bound(10), 3);
        assert_eq!(diameter_lower_bound(14), 4);
    }

    #[test]
    fn bit_parallel_matches_plain_bfs() {
        for seed in 0..3 {
            let g = build_cube(&TwistSpec::duplicube(9, seed)).unwrap().to_graph();
            let ecc = eccentricities(&g).unwrap();
            for v in (0..512).step_by(7) {
                assert_eq!(Some(ecc[v]), g.eccentricity(v));
            }
        }
        let c = cycle(300);
        assert!(eccentricities(&c).unwrap().iter().all(|&e| e == 150));
    }

    #[test]
    fn hypercube_diameter_is_n() {
        for n in 1..=10 {
            assert_eq!(diameter_exact(&hypercube(n), Guard::Enforce).unwrap(), n);
        }
    }

    #[test]
    fn disconnected_and_guard() {
        let g = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(eccentricities(&g).is_err());
        assert!(matches!(diameter_exact(&hypercube(17), Guard::Enforce), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn bounds_bracket_exact() {
        let cube = build_cube(&TwistSpec::duplicube(10, 5)).unwrap();
        let exact = diameter_exact(&cube.to_graph(), Guard::Enforce).unwrap();
        let b = diameter_bounds(&cube, 8, 1).unwrap();
        assert!(diameter_lower_bound(10) <= b.lower && b.lower <= exact && exact <= b.upper);
        assert_eq!(b.upper, 10);
    }
}
