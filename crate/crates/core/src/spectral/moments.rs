//! Closed-walk counts, normalized trace moments and the semicircle reference.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Range;

use super::SpectrumResult;
use crate::cube::TwistedCube;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Guard;

/// Longest closed walk counted by [`walk_moments`].
pub const MAX_WALK_LENGTH: u32 = 10;
const MAX_WALK_VERTICES: u64 = 1 << 20;

/// One row of the moment table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub k: u32,
    /// `(1/N) Σ (λ_i/√d)^k`, from closed-walk counts.
    pub m_k: f64,
    /// Semicircle moment: `C_{k/2}` for even `k`, 0 for odd.
    pub catalan: f64,
    pub abs_error: f64,
}

/// Normalized trace moments of the adjacency operator, scaled by the mean
/// degree `d` (which is `n` for every plain cube).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub n: u32,
    pub vertex_count: u64,
    pub degree_sum: u64,
    /// Total closed `k`-walks, indexed by `k = 0..=k_max`.
    pub closed_walks: Vec<u128>,
    pub rows: Vec<MomentRow>,
    /// The same moments computed from a dense spectrum, when attached.
    pub spectral: Option<Vec<f64>>,
}

impl MomentReport {
    /// Builds the table from closed-walk totals.
    pub fn from_totals(n: u32, vertex_count: u64, degree_sum: u64, closed_walks: Vec<u128>) -> Self {
        let d = degree_sum as f64 / vertex_count as f64;
        let rows = (1..closed_walks.len() as u32)
            .map(|k| {
                // Dividing by the degree sum first keeps m_2 exactly 1.
                let ratio = closed_walks[k as usize] as f64 / degree_sum as f64;
                let m_k = ratio / libm::pow(d, k as f64 / 2.0 - 1.0);
                let catalan = semicircle_reference(k);
                MomentRow { k, m_k, catalan, abs_error: (m_k - catalan).abs() }
            })
            .collect();
        MomentReport { n, vertex_count, degree_sum, closed_walks, rows, spectral: None }
    }

    pub fn k_max(&self) -> u32 {
        self.closed_walks.len() as u32 - 1
    }

    pub fn moment(&self, k: u32) -> Option<f64> {
        self.rows.iter().find(|r| r.k == k).map(|r| r.m_k)
    }

    /// Attaches eigenvalue-derived moments for cross-checking.
    pub fn attach_spectrum(&mut self, spectrum: &SpectrumResult) {
        let d = self.degree_sum as f64 / self.vertex_count as f64;
        self.spectral = Some(spectral_moments(spectrum, d, self.k_max()));
    }

    /// Largest gap between walk-count and eigenvalue moments, `k ≥ 1`.
    pub fn spectral_deviation(&self) -> Option<f64> {
        let s = self.spectral.as_ref()?;
        Some(self.rows.iter().map(|r| (r.m_k - s[r.k as usize]).abs()).fold(0.0, f64::max))
    }
}

/// `(1/N) Σ (λ_i/√d)^k` for `k = 0..=k_max`.
pub fn spectral_moments(spectrum: &SpectrumResult, degree: f64, k_max: u32) -> Vec<f64> {
    let count = spectrum.len() as f64;
    let scale = 1.0 / libm::sqrt(degree);
    let mut sums = vec![0.0; k_max as usize + 1];
    for &lambda in &spectrum.eigenvalues {
        let x = lambda * scale;
        let mut p = 1.0;
        for s in sums.iter_mut() {
            *s += p;
            p *= x;
        }
    }
    sums.into_iter().map(|s| s / count).collect()
}

/// Exact closed-walk moments of a cube for `k = 1..=k_max`.
pub fn walk_moments(cube: &TwistedCube, k_max: u32, guard: Guard) -> Result<MomentReport> {
    check_walk_limits(cube.vertex_count() as u64, k_max, guard)?;
    let totals = closed_walk_totals(cube, k_max, 0..cube.vertex_count());
    let degree_sum = (0..cube.vertex_count()).map(|v| cube.degree(v) as u64).sum();
    Ok(MomentReport::from_totals(cube.n(), cube.vertex_count() as u64, degree_sum, totals))
}

pub(crate) fn check_walk_limits(vertices: u64, k_max: u32, guard: Guard) -> Result<()> {
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1"));
    }
    guard.check("closed walk length", k_max as u64, MAX_WALK_LENGTH as u64)?;
    guard.check("closed walk vertices", vertices, MAX_WALK_VERTICES)
}

/// Closed-walk totals for walks starting at `sources`, indexed by length
/// `0..=k_max`.
///
/// Walk counts from each source are propagated to depth `⌈k_max/2⌉`; a
/// closed walk of length `a + b` through its midpoint `u` pairs an `a`-walk
/// with a reversed `b`-walk, so the count at `v` is `Σ_u c_a(u) c_b(u)`.
/// Totals over disjoint source ranges add up, which lets callers split
/// the work.
pub fn closed_walk_totals<G: Graph>(g: &G, k_max: u32, sources: Range<usize>) -> Vec<u128> {
    let count = g.vertex_count();
    let depth = k_max.div_ceil(2) as usize;
    let mut levels: Vec<Vec<u64>> = vec![vec![0; count]; depth + 1];
    let mut touched: Vec<Vec<u32>> = vec![Vec::new(); depth + 1];
    let mut totals = vec![0u128; k_max as usize + 1];
    for v in sources {
        levels[0][v] = 1;
        touched[0].push(v as u32);
        for t in 1..=depth {
            let (prev, next) = levels.split_at_mut(t);
            let (prev, next) = (&prev[t - 1], &mut next[0]);
            let (tp, tn) = touched.split_at_mut(t);
            for &w in &tp[t - 1] {
                let c = prev[w as usize];
                g.for_each_neighbor(w as usize, |u| {
                    if next[u] == 0 {
                        tn[0].push(u as u32);
                    }
                    next[u] += c;
                });
            }
        }
        for k in 0..=k_max as usize {
            let a = k / 2;
            let b = k - a;
            let (ca, cb) = (&levels[a], &levels[b]);
            let mut sum = 0u128;
            for &u in &touched[a] {
                sum += ca[u as usize] as u128 * cb[u as usize] as u128;
            }
            totals[k] += sum;
        }
        for t in 0..=depth {
            for &u in &touched[t] {
                levels[t][u as usize] = 0;
            }
            touched[t].clear();
        }
    }
    totals
}

/// Closed `k`-walk counts at one vertex for `k = 0..=k_max`.
pub fn closed_walks_at<G: Graph>(g: &G, v: usize, k_max: u32) -> Vec<u64> {
    closed_walk_totals(g, k_max, v..v + 1).into_iter().map(|x| x as u64).collect()
}

/// Even moments of the semicircle law are Catalan numbers `C_{k/2}`; odd
/// moments vanish.
pub fn semicircle_reference(k: u32) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let m = k / 2;
    let mut c = 1.0;
    for i in 0..m {
        c = c * (2.0 * (2 * i + 1) as f64) / (i + 2) as f64;
    }
    c
}

/// Semicircle density `(1/2π) √(4 − x²)` on `[−2, 2]`, which integrates to 1.
pub fn semicircle_density(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        return 0.0;
    }
    libm::sqrt(4.0 - x * x) / (2.0 * PI)
}

/// The density with the constant `2/(4π²)`. It has total mass `1/π`, so it is
/// [`semicircle_density`] divided by `π`; reported alongside for comparison.
pub fn semicircle_density_printed(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        return 0.0;
    }
    2.0 / (4.0 * PI * PI) * libm::sqrt(4.0 - x * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{build_cube, TwistSpec};
    use crate::spectral::full_spectrum;

    fn binomial(n: u128, k: u128) -> u128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Closed k-walk total of Q_n from its binomial spectrum.
    fn hypercube_walks(n: u32, k: u32) -> i128 {
        (0..=n as i128).map(|j| binomial(n as u128, j as u128) as i128 * (n as i128 - 2 * j).pow(k)).sum()
    }

    #[test]
    fn catalan_values() {
        let want = [1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0, 0.0, 14.0, 0.0, 42.0];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(semicircle_reference(k as u32), *w);
        }
        assert_eq!(semicircle_reference(20), 16796.0);
    }

    #[test]
    fn densities() {
        assert_eq!(semicircle_density(2.0), 0.0);
        assert_eq!(semicircle_density(-2.0), 0.0);
        assert_eq!(semicircle_density(3.0), 0.0);
        assert!((semicircle_density(0.0) - 1.0 / PI).abs() < 1e-15);
        // Midpoint rule: the normalized density has mass 1, the printed one 1/π.
        let steps = 200_000;
        let h = 4.0 / steps as f64;
        let (mut a, mut b) = (0.0, 0.0);
        for i in 0..steps {
            let x = -2.0 + (i as f64 + 0.5) * h;
            a += semicircle_density(x) * h;
            b += semicircle_density_printed(x) * h;
        }
        assert!((a - 1.0).abs() < 1e-6);
        assert!((b - 1.0 / PI).abs() < 1e-6);
    }

    #[test]
    fn hypercube_walks_match_binomial_oracle() {
        for n in 1..=9u32 {
            let cube = build_cube(&TwistSpec::hypercube(n)).unwrap();
            let report = walk_moments(&cube, 8, Guard::Enforce).unwrap();
            for k in 0..=8 {
                assert_eq!(report.closed_walks[k as usize] as i128, hypercube_walks(n, k), "n={n} k={k}");
            }
            assert_eq!(report.moment(2), Some(1.0));
            let m4 = report.moment(4).unwrap();
            assert!((m4 - (3.0 - 2.0 / n as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn second_moment_is_exactly_one() {
        for seed in 0..4 {
            let cube = build_cube(&TwistSpec::independent(9, seed)).unwrap();
            let report = walk_moments(&cube, 4, Guard::Enforce).unwrap();
            assert_eq!(report.moment(2), Some(1.0));
            assert_eq!(report.moment(1), Some(0.0));
        }
    }

    #[test]
    fn walk_moments_match_spectrum() {
        for seed in 0..3 {
            let cube = build_cube(&TwistSpec::duplicube(8, seed)).unwrap();
            let mut report = walk_moments(&cube, 8, Guard::Enforce).unwrap();
            report.attach_spectrum(&full_spectrum(&cube, Guard::Enforce).unwrap());
            assert!(report.spectral_deviation().unwrap() < 1e-9);
        }
    }

    #[test]
    fn split_sources_add_up() {
        let cube = build_cube(&TwistSpec::duplicube(7, 3)).unwrap();
        let whole = closed_walk_totals(&cube, 6, 0..128);
        let a = closed_walk_totals(&cube, 6, 0..50);
        let b = closed_walk_totals(&cube, 6, 50..128);
        let sum: Vec<u128> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        assert_eq!(whole, sum);
        let per: Vec<u64> = closed_walks_at(&cube, 5, 6);
        assert_eq!(per[2], 7);
    }

    #[test]
    fn limits() {
        let cube = build_cube(&TwistSpec::duplicube(4, 0)).unwrap();
        assert!(walk_moments(&cube, 11, Guard::Enforce).is_err());
        assert!(walk_moments(&cube, 0, Guard::Enforce).is_err());
        assert!(walk_moments(&cube, 11, Guard::Override).is_ok());
    }
}
