//! Group order from generators by the Schreier–Sims algorithm.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

type Perm = Vec<u32>;

fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// Apply `a`, then `b`.
fn then(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn invert(a: &[u32]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

fn is_identity(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

struct Level {
    point: u32,
    gens: Vec<Perm>,
    /// `transversal[β]` maps the base point to `β`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(point: u32, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[point as usize] = Some(identity(n));
        Level { point, gens: Vec::new(), transversal, orbit: vec![point] }
    }

    fn rebuild_orbit(&mut self) {
        let n = self.transversal.len();
        self.transversal = vec![None; n];
        self.transversal[self.point as usize] = Some(identity(n));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let gamma = self.orbit[i];
            for s in &self.gens {
                let delta = s[gamma as usize];
                if self.transversal[delta as usize].is_none() {
                    let u = then(self.transversal[gamma as usize].as_ref().expect("orbit point"), s);
                    self.transversal[delta as usize] = Some(u);
                    self.orbit.push(delta);
                }
            }
            i += 1;
        }
    }
}

struct Chain {
    n: usize,
    levels: Vec<Level>,
}

impl Chain {
    /// Sifts `g` from level `i`; returns the residue and the level where it stopped.
    fn sift(&self, mut g: Perm, i: usize) -> (Perm, usize) {
        for j in i..self.levels.len() {
            let level = &self.levels[j];
            let beta = g[level.point as usize];
            match &level.transversal[beta as usize] {
                Some(u) => g = then(&g, &invert(u)),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    fn extend(&mut self, i: usize, g: Perm) {
        let (residue, stop) = self.sift(g.clone(), i);
        if stop == self.levels.len() && is_identity(&residue) {
            return;
        }
        if i == self.levels.len() {
            let moved = g.iter().enumerate().find(|(x, &y)| *x as u32 != y).map(|(x, _)| x as u32);
            let point = moved.expect("non-identity element moves a point");
            self.levels.push(Level::new(point, self.n));
        }
        self.levels[i].gens.push(g);
        self.levels[i].rebuild_orbit();
        let level = &self.levels[i];
        let mut schreier = Vec::new();
        for &beta in &level.orbit {
            let u = level.transversal[beta as usize].as_ref().expect("orbit point");
            for s in &level.gens {
                let image = s[beta as usize];
                let w = level.transversal[image as usize].as_ref().expect("orbit is closed");
                let h = then(&then(u, s), &invert(w));
                if !is_identity(&h) {
                    schreier.push(h);
                }
            }
        }
        for h in schreier {
            self.extend(i + 1, h);
        }
    }
}

/// Order of the permutation group on `0..n` generated by `generators`.
pub fn order_from_generators(generators: &[Vec<u32>], n: usize) -> BigUint {
    let mut chain = Chain { n, levels: Vec::new() };
    for g in generators {
        if !is_identity(g) {
            chain.extend(0, g.clone());
        }
    }
    chain.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
}
