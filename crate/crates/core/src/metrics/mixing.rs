use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, SimpleGraph};
use crate::vertex::Vertex;
use crate::Guard;

/// Dense distribution evolution is refused above `2^16` vertices.
pub const MAX_MIXING_VERTICES: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct MixingProfile {
    pub start: Vertex,
    /// Total-variation distance to stationarity after `t = 0..=t_max` steps.
    pub tv: Vec<f64>,
    /// First `t` with distance at most 1/4, if reached within `t_max`.
    pub t_mix_quarter: Option<usize>,
}

/// Exact evolution of the lazy simple random walk from a point mass.
///
/// Each step holds with probability 1/2 and otherwise moves to a uniform
/// neighbor. The stationary law is proportional to degree (uniform for a
/// regular graph).
pub fn mixing_profile(g: &SimpleGraph, start: Vertex, t_max: usize, guard: Guard) -> Result<MixingProfile> {
    let count = g.vertex_count();
    guard.check("mixing profile", count as u64, MAX_MIXING_VERTICES)?;
    if start.index() >= count {
        return Err(Error::VertexRange { vertex: start.0 as u64, count: count as u64 });
    }
    if (0..count).any(|v| g.degree(v) == 0) {
        return Err(Error::Domain("lazy walk needs every vertex to have a neighbor"));
    }
    let total_degree: f64 = (0..count).map(|v| g.degree(v) as f64).sum();
    let stationary: Vec<f64> = (0..count).map(|v| g.degree(v) as f64 / total_degree).collect();
    let mut p = vec![0.0; count];
    p[start.index()] = 1.0;
    let mut next = vec![0.0; count];
    let tv_of = |p: &[f64]| 0.5 * p.iter().zip(&stationary).map(|(a, b)| (a - b).abs()).sum::<f64>();
    let mut tv = Vec::with_capacity(t_max + 1);
    tv.push(tv_of(&p));
    for _ in 0..t_max {
        for v in 0..count {
            let mut inflow = 0.0;
            for &u in g.neighbors(v) {
                inflow += p[u as usize] / g.degree(u as usize) as f64;
            }
            next[v] = 0.5 * p[v] + 0.5 * inflow;
        }
        core::mem::swap(&mut p, &mut next);
        tv.push(tv_of(&p));
    }
    let t_mix_quarter = tv.iter().position(|&d| d <= 0.25);
    Ok(MixingProfile { start, tv, t_mix_quarter })
}
