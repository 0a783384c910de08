//! Exhaustive automorphism enumeration for very small graphs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, SimpleGraph};

use super::search::Adjacency;

/// Enumeration stops with an error after this many automorphisms.
const MAX_ENUMERATED: usize = 1 << 20;

/// Every automorphism of `g`, in lexicographic order of image arrays.
pub(crate) fn enumerate(g: &SimpleGraph) -> Result<Vec<Vec<u32>>> {
    let count = g.vertex_count();
    let adj = Adjacency::new(g);
    let mut out = Vec::new();
    let mut phi = vec![u32::MAX; count];
    let mut used = vec![false; count];
    assign(g, &adj, 0, &mut phi, &mut used, &mut out)?;
    Ok(out)
}

fn assign(
    g: &SimpleGraph,
    adj: &Adjacency,
    v: usize,
    phi: &mut [u32],
    used: &mut [bool],
    out: &mut Vec<Vec<u32>>,
) -> Result<()> {
    let count = phi.len();
    if v == count {
        if out.len() >= MAX_ENUMERATED {
            return Err(Error::GuardExceeded {
                what: "enumerated automorphisms",
                size: out.len() as u64 + 1,
                limit: MAX_ENUMERATED as u64,
            });
        }
        out.push(phi.to_vec());
        return Ok(());
    }
    for image in 0..count {
        if used[image] || g.neighbors(image).len() != g.neighbors(v).len() {
            continue;
        }
        // Adjacency to every earlier vertex must be mirrored exactly.
        let consistent = (0..v).all(|u| adj.has_edge(u, v) == adj.has_edge(phi[u] as usize, image));
        if !consistent {
            continue;
        }
        phi[v] = image as u32;
        used[image] = true;
        assign(g, adj, v + 1, phi, used, out)?;
        used[image] = false;
        phi[v] = u32::MAX;
    }
    Ok(())
}

/// A small generating set: each element not yet generated by the previous
/// choices is added, and the closure is recomputed.
pub(crate) fn greedy_generators(elements: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut closure: BTreeSet<Vec<u32>> = BTreeSet::new();
    if let Some(first) = elements.first() {
        closure.insert((0..first.len() as u32).collect());
    }
    for e in elements {
        if closure.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let mut frontier: Vec<Vec<u32>> = closure.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y: Vec<u32> = x.iter().map(|&p| s[p as usize]).collect();
                if closure.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}
