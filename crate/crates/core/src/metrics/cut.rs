use alloc::vec::Vec;

use crate::cube::TwistedCube;
use crate::error::Result;
use crate::graph::SimpleGraph;
use crate::Guard;

/// Exhaustive matching-cut search is refused above this many vertices.
pub const MAX_CUT_VERTICES: u64 = 24;

/// A bipartition whose crossing edges share no endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCut {
    /// Bitmask of the side containing vertex 0.
    pub side: u32,
    pub crossing: Vec<(u32, u32)>,
    /// The cut between the two top-level instances `V⁰ ⊔ V¹`.
    pub trivial: bool,
}

/// Every unordered bipartition into two non-empty parts whose crossing edges
/// form a matching, ordered by side mask.
pub fn matching_cut_search(cube: &TwistedCube, guard: Guard) -> Result<Vec<MatchingCut>> {
    let count = cube.vertex_count();
    guard.check("matching-cut search", count as u64, MAX_CUT_VERTICES.min(31))?;
    let g = cube.to_graph();
    let neighbor_mask: Vec<u32> =
        (0..count).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let top_half: u32 = (1u32 << (count / 2)) - 1;
    let all: u32 = if count == 32 { u32::MAX } else { (1u32 << count) - 1 };
    let mut cuts = Vec::new();
    // Vertex 0 is always on the side `mask`; the other side must be non-empty.
    for rest in 0u32..(1u32 << (count - 1)) {
        let side = (rest << 1) | 1;
        if side == all {
            continue;
        }
        let ok = (0..count).all(|v| {
            let across = if side >> v & 1 == 1 { neighbor_mask[v] & !side } else { neighbor_mask[v] & side };
            across.count_ones() <= 1
        });
        if ok {
            cuts.push(MatchingCut { side, crossing: crossing_edges(&g, side), trivial: side == top_half });
        }
    }
    Ok(cuts)
}

fn crossing_edges(g: &SimpleGraph, side: u32) -> Vec<(u32, u32)> {
    g.edges().filter(|&(u, v)| (side >> u & 1) != (side >> v & 1)).collect()
}
