use alloc::vec;
use alloc::vec::Vec;

use crate::cube::TwistedCube;
use crate::error::Result;
use crate::graph::{Graph, SimpleGraph};
use crate::vertex::Vertex;

/// One step of a route: the vertex reached and the generation of the edge
/// taken (0 for a base-graph edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hop {
    pub vertex: Vertex,
    pub generation: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteTrace {
    pub source: Vertex,
    pub target: Vertex,
    pub hops: Vec<Hop>,
}

impl RouteTrace {
    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }

    /// Every hop is an edge of the cube with the stated generation, twist
    /// generations strictly decrease, and the route ends at the target.
    pub fn is_valid(&self, cube: &TwistedCube) -> bool {
        let mut at = self.source;
        let mut last_gen = u32::MAX;
        for hop in &self.hops {
            let adjacent = cube.neighbors(at).map(|ns| ns.contains(&hop.vertex)).unwrap_or(false);
            if !adjacent || cube.generation(at, hop.vertex) != Ok(hop.generation) {
                return false;
            }
            if hop.generation > 0 {
                if hop.generation >= last_gen {
                    return false;
                }
                last_gen = hop.generation;
            }
            at = hop.vertex;
        }
        at == self.target
    }
}

/// Local routing: from the current vertex take the edge of generation equal to
/// the largest coordinate where it still differs from the target.
///
/// Each hop lowers that coordinate index, so at most `n` twist hops are used.
/// With a base graph the remaining distance inside the target's copy of the
/// base is covered by a shortest path there.
pub fn greedy_route(cube: &TwistedCube, source: Vertex, target: Vertex) -> Result<RouteTrace> {
    cube.neighbors(source)?;
    cube.neighbors(target)?;
    let mut hops = Vec::new();
    let mut at = source;
    while at != target {
        let k = cube.generation(at, target)?;
        if k == 0 {
            break;
        }
        at = cube.neighbor_k(at, k)?;
        hops.push(Hop { vertex: at, generation: k });
    }
    if at != target {
        let base = cube.base().expect("only base edges can remain");
        let h = cube.base_size();
        let offset = at.0 - at.0 % h;
        for b in base_path(base, (at.0 % h) as usize, (target.0 % h) as usize) {
            hops.push(Hop { vertex: Vertex(offset + b as u32), generation: 0 });
        }
    }
    Ok(RouteTrace { source, target, hops })
}

fn base_path(base: &SimpleGraph, from: usize, to: usize) -> Vec<usize> {
    let dist = base.bfs_distances(to);
    assert!(dist[from] != u32::MAX, "base graph is disconnected");
    let mut path = vec![];
    let mut at = from;
    while at != to {
        at = base.neighbors(at).iter().map(|&w| w as usize).find(|&w| dist[w] + 1 == dist[at]).unwrap();
        path.push(at);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{build_cube, TwistSpec};
    use crate::graph::cycle;

    #[test]
    fn hypercube_route_fixes_bits_from_the_top() {
        let q = build_cube(&TwistSpec::hypercube(3)).unwrap();
        let v = |c: &[u8]| Vertex::from_coords(c);
        let r = greedy_route(&q, v(&[0, 0, 0]), v(&[1, 1, 1])).unwrap();
        let path: Vec<_> = r.hops.iter().map(|h| h.vertex).collect();
        assert_eq!(path, [v(&[0, 0, 1]), v(&[0, 1, 1]), v(&[1, 1, 1])]);
        assert!(r.is_valid(&q));
        assert!(greedy_route(&q, v(&[1, 0, 1]), v(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn routes_are_valid_and_short() {
        let cube = build_cube(&TwistSpec::independent(9, 4)).unwrap();
        for x in (0..512).step_by(5) {
            for y in (0..512).step_by(11) {
                let r = greedy_route(&cube, Vertex(x), Vertex(y)).unwrap();
                assert!(r.is_valid(&cube));
                assert!(r.len() <= 9);
            }
        }
    }

    #[test]
    fn base_graph_routes_finish_inside_the_base() {
        let cube = build_cube(&TwistSpec::duplicube(4, 1).with_base(cycle(5))).unwrap();
        for x in 0..80 {
            for y in 0..80 {
                let r = greedy_route(&cube, Vertex(x), Vertex(y)).unwrap();
                assert!(r.is_valid(&cube), "{x}->{y}");
                assert!(r.len() <= 4 + 2);
            }
        }
    }
}
