//! Automorphism groups of cubes and the asymmetry experiment.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::cube::{build_cube, Model, TwistSpec, TwistedCube};
use crate::error::{Error, Result};
use crate::graph::{Graph, SimpleGraph};
use crate::Guard;

mod brute;
mod schreier;
mod search;

pub use schreier::order_from_generators;

/// Largest vertex count for [`automorphisms`] without an override.
pub const MAX_AUT_VERTICES: u64 = 1024;
/// Largest vertex count for [`brute_force_automorphisms`].
pub const MAX_BRUTE_FORCE_VERTICES: u64 = 16;

/// How an automorphism acts on the two halves of the top-generation cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// Maps the first half onto the second.
    Swap,
    /// Maps each half onto itself.
    Preserve,
    Other,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Swap => "swap",
            GeneratorKind::Preserve => "preserve",
            GeneratorKind::Other => "other",
        }
    }

    /// Classifies `phi` relative to the split of `0..len` into halves.
    pub fn of(phi: &[u32]) -> Self {
        let half = (phi.len() / 2) as u32;
        if phi.len() % 2 == 1 || phi.is_empty() {
            return GeneratorKind::Other;
        }
        let low = &phi[..half as usize];
        if low.iter().all(|&y| y < half) {
            GeneratorKind::Preserve
        } else if low.iter().all(|&y| y >= half) {
            GeneratorKind::Swap
        } else {
            GeneratorKind::Other
        }
    }
}

/// Generators and exact order of an automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutReport {
    pub vertex_count: usize,
    /// Image arrays: vertex `x` maps to `generators[i][x]`.
    pub generators: Vec<Vec<u32>>,
    pub order: BigUint,
    pub kinds: Vec<GeneratorKind>,
}

impl AutReport {
    fn new(vertex_count: usize, generators: Vec<Vec<u32>>, order: BigUint) -> Self {
        let kinds = generators.iter().map(|g| GeneratorKind::of(g)).collect();
        AutReport { vertex_count, generators, order, kinds }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == BigUint::from(1u32)
    }

    /// Orbit index of each vertex under the generated group.
    pub fn orbits(&self) -> Vec<u32> {
        let mut label: Vec<u32> = (0..self.vertex_count as u32).collect();
        loop {
            let mut changed = false;
            for g in &self.generators {
                for (x, &y) in g.iter().enumerate() {
                    let m = label[x].min(label[y as usize]);
                    if label[x] != m || label[y as usize] != m {
                        label[x] = m;
                        label[y as usize] = m;
                        changed = true;
                    }
                }
            }
            if !changed {
                return label;
            }
        }
    }

    pub fn is_vertex_transitive(&self) -> bool {
        self.orbits().iter().all(|&l| l == 0)
    }

    /// Re-checks every generator on `g` and returns the order of the group
    /// they generate, computed independently by Schreier–Sims.
    pub fn verify(&self, g: &SimpleGraph) -> Result<BigUint> {
        let adj = search::Adjacency::new(g);
        for phi in &self.generators {
            if !search::preserves_edges(g, &adj, phi) {
                return Err(Error::Internal("automorphism generator does not preserve edges"));
            }
        }
        Ok(order_from_generators(&self.generators, self.vertex_count))
    }
}

/// Automorphism group of a cube.
pub fn automorphisms(cube: &TwistedCube, guard: Guard) -> Result<AutReport> {
    guard.check("automorphism search vertices", cube.vertex_count() as u64, MAX_AUT_VERTICES)?;
    graph_automorphisms(&cube.to_graph(), Guard::Override)
}

/// Automorphism group of a graph by individualization–refinement.
///
/// Colors are refined by neighbor colors and, once that is stable, by the
/// colors at distance two. The first leaf of the search tree is compared
/// with leaves below every vertex of each target cell, deepest level first;
/// a matching leaf yields a generator, which is checked on every edge. The
/// order is the product of the base-point orbit sizes.
pub fn graph_automorphisms(g: &SimpleGraph, guard: Guard) -> Result<AutReport> {
    guard.check("automorphism search vertices", g.vertex_count() as u64, MAX_AUT_VERTICES)?;
    let mut search = search::Search::new(g);
    search.run();
    let order = search.order();
    for phi in &search.generators {
        if !search::preserves_edges(g, search.adjacency(), phi) {
            return Err(Error::Internal("automorphism generator does not preserve edges"));
        }
    }
    let generators = core::mem::take(&mut search.generators);
    Ok(AutReport::new(g.vertex_count(), generators, order))
}

/// Automorphism group by exhaustive backtracking over vertex bijections.
pub fn brute_force_automorphisms(g: &SimpleGraph, guard: Guard) -> Result<AutReport> {
    guard.check("brute-force automorphism vertices", g.vertex_count() as u64, MAX_BRUTE_FORCE_VERTICES)?;
    let all = brute::enumerate(g)?;
    let order = BigUint::from(all.len());
    let generators = brute::greedy_generators(&all);
    Ok(AutReport::new(g.vertex_count(), generators, order))
}

/// Outcome of the asymmetry experiment for one seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedOutcome {
    pub seed: u64,
    pub order: BigUint,
    pub kinds: Vec<GeneratorKind>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymmetryReport {
    pub model: Model,
    pub n: u32,
    pub outcomes: Vec<SeedOutcome>,
}

impl AsymmetryReport {
    pub fn trivial_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.order == BigUint::from(1u32)).count()
    }

    pub fn trivial_fraction(&self) -> f64 {
        if self.outcomes.is_empty() {
            return 0.0;
        }
        self.trivial_count() as f64 / self.outcomes.len() as f64
    }

    /// Generator counts by kind over all seeds: (swap, preserve, other).
    pub fn kind_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for k in self.outcomes.iter().flat_map(|o| &o.kinds) {
            match k {
                GeneratorKind::Swap => counts.0 += 1,
                GeneratorKind::Preserve => counts.1 += 1,
                GeneratorKind::Other => counts.2 += 1,
            }
        }
        counts
    }
}

/// Builds one cube per seed and records its automorphism group.
///
/// With [`Model::Explicit`] there are no random choices, so every seed
/// yields the hypercube.
pub fn asymmetry_experiment(model: Model, n: u32, seeds: &[u64], guard: Guard) -> Result<AsymmetryReport> {
    let mut outcomes = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let spec = match model {
            Model::Duplicube => TwistSpec::duplicube(n, seed),
            Model::Independent => TwistSpec::independent(n, seed),
            Model::Explicit => TwistSpec::hypercube(n),
        };
        let cube = build_cube(&spec)?;
        let report = automorphisms(&cube, guard)?;
        outcomes.push(SeedOutcome { seed, order: report.order, kinds: report.kinds });
    }
    Ok(AsymmetryReport { model, n, outcomes })
}

/// Explicit spec whose tables are identities except `σ_2`, the transposition
/// of the first two vertices of the 4-cycle `G_2`. That transposition is not
/// an automorphism of `G_2`, yet the resulting cube is vertex-transitive.
pub fn transposition_twist_spec(n: u32) -> Result<TwistSpec> {
    if n < 3 {
        return Err(Error::Domain("the transposition twist needs n >= 3"));
    }
    let tables = (1..n)
        .map(|j| {
            let mut t: Vec<u32> = (0..1u32 << j).collect();
            if j == 2 {
                t.swap(0, 1);
            }
            t
        })
        .collect();
    Ok(TwistSpec::explicit(n, tables))
}
