//! Adjacency spectra, closed-walk moments, the semicircle reference and
//! short-cycle counts.

use alloc::vec;
use alloc::vec::Vec;

use crate::cube::TwistedCube;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Guard;

mod cycles;
pub mod eigen;
mod histogram;
mod lanczos;
mod moments;

pub use cycles::{cycle_count, MAX_CYCLE_LENGTH};
pub use histogram::{empirical_histogram, gaussian_cdf, semicircle_cdf, Histogram, HistogramBin};
pub use lanczos::{apply_adjacency, top_eigenvalues, TopEigenvalues, MAX_TOP_COUNT};
pub use moments::{
    closed_walk_totals, closed_walks_at, semicircle_density, semicircle_density_printed, semicircle_reference,
    spectral_moments, walk_moments, MomentReport, MomentRow, MAX_WALK_LENGTH,
};

/// Largest vertex count accepted by [`full_spectrum`] without an override.
pub const MAX_DENSE_VERTICES: u64 = 1 << 13;

/// All adjacency eigenvalues of one cube, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub n: u32,
    pub seed: u64,
}

impl SpectrumResult {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x * x).sum()
    }

    /// Groups eigenvalues closer than `tol` to their predecessor, returning
    /// `(mean value, multiplicity)` in descending order.
    pub fn clusters(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        let mut prev = f64::NAN;
        for &x in &self.eigenvalues {
            match out.last_mut() {
                Some((_, count, sum)) if (prev - x).abs() <= tol => {
                    *count += 1;
                    *sum += x;
                }
                _ => out.push((x, 1, x)),
            }
            prev = x;
        }
        out.into_iter().map(|(_, c, s)| (s / c as f64, c)).collect()
    }
}

/// Dense row-major adjacency matrix.
pub fn adjacency_matrix<G: Graph>(g: &G) -> Vec<f64> {
    let count = g.vertex_count();
    let mut a = vec![0.0; count * count];
    for v in 0..count {
        g.for_each_neighbor(v, |w| a[v * count + w] = 1.0);
    }
    a
}

/// Full adjacency spectrum with the built-in dense solver.
pub fn full_spectrum(cube: &TwistedCube, guard: Guard) -> Result<SpectrumResult> {
    full_spectrum_with(cube, guard, eigen::symmetric_eigenvalues)
}

/// Full adjacency spectrum with a caller-supplied dense symmetric solver.
///
/// The solver receives the row-major matrix and its dimension and must
/// return every eigenvalue. The result is re-sorted and checked against the
/// trace and edge-count identities.
pub fn full_spectrum_with<F>(cube: &TwistedCube, guard: Guard, solver: F) -> Result<SpectrumResult>
where
    F: FnOnce(Vec<f64>, usize) -> Result<Vec<f64>>,
{
    let count = cube.vertex_count();
    guard.check("dense spectrum vertices", count as u64, MAX_DENSE_VERTICES)?;
    let mut eigenvalues = solver(adjacency_matrix(cube), count)?;
    if eigenvalues.len() != count {
        return Err(Error::Internal("dense solver returned the wrong number of eigenvalues"));
    }
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let result = SpectrumResult { eigenvalues, n: cube.n(), seed: cube.spec().seed };
    let degree_sum: usize = (0..count).map(|v| cube.degree(v)).sum();
    let tol = 1e-7 * (count as f64).max(1.0);
    if result.trace().abs() > tol || (result.sum_of_squares() - degree_sum as f64).abs() > tol * 10.0 {
        return Err(Error::Internal("spectrum violates the trace identities"));
    }
    Ok(result)
}
