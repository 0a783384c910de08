//! Leading adjacency eigenvalues by thick-restart Lanczos on the implicit
//! operator.

use alloc::vec;
use alloc::vec::Vec;

use super::eigen::jacobi_eigenpairs;
use crate::cube::TwistedCube;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::StreamKey;

/// Largest number of leading eigenvalues returned by [`top_eigenvalues`].
pub const MAX_TOP_COUNT: usize = 4;

const RESTART_CAP: usize = 400;
const BASIS_BUDGET: usize = 1 << 26;
const TOLERANCE: f64 = 1e-10;
const START_TAG: u32 = 0x1a2c_0000;

/// Leading eigenvalues, descending, each with the residual norm of its
/// eigenvector estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct TopEigenvalues {
    pub values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub matvecs: usize,
}

impl TopEigenvalues {
    /// Normalized spectral gap `(λ₁ − λ₂) / λ₁`.
    pub fn normalized_gap(&self) -> Option<f64> {
        match self.values.as_slice() {
            [a, b, ..] => Some((a - b) / a),
            _ => None,
        }
    }
}

/// `y = A x` for the adjacency operator, computed from neighbor queries.
pub fn apply_adjacency<G: Graph>(g: &G, x: &[f64], y: &mut [f64]) {
    for (v, out) in y.iter_mut().enumerate() {
        let mut acc = 0.0;
        g.for_each_neighbor(v, |w| acc += x[w]);
        *out = acc;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let chunks = a.len() / 4 * 4;
    for i in (0..chunks).step_by(4) {
        for l in 0..4 {
            acc[l] += a[i + l] * b[i + l];
        }
    }
    let mut tail = 0.0;
    for i in chunks..a.len() {
        tail += a[i] * b[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn norm(x: &[f64]) -> f64 {
    libm::sqrt(dot(x, x))
}

/// Removes the components of `w` along each (orthonormal) vector, twice.
fn orthogonalize(w: &mut [f64], against: &[Vec<f64>]) {
    for _ in 0..2 {
        for q in against {
            let c = dot(q, w);
            axpy(-c, q, w);
        }
    }
}

/// Top `count` adjacency eigenvalues of a regular cube.
///
/// `λ₁` is the degree `d` with the constant eigenvector and `d − 2` belongs
/// to `g(x) = (−1)^{x_n}`; both are verified on the operator and deflated.
/// The remaining values are the leading eigenvalues of the operator on the
/// orthogonal complement, found one at a time with locking so repeated
/// eigenvalues are reported with their multiplicity up to `count`.
pub fn top_eigenvalues(cube: &TwistedCube, count: usize) -> Result<TopEigenvalues> {
    if count == 0 || count > MAX_TOP_COUNT {
        return Err(Error::Domain("top_eigenvalues count must be between 1 and 4"));
    }
    let size = cube.vertex_count();
    let degree = cube.degree(0);
    if (0..size).any(|v| cube.degree(v) != degree) {
        return Err(Error::Domain("top_eigenvalues needs a regular graph"));
    }
    let d = degree as f64;
    let mut matvecs = 0;
    let mut y = vec![0.0; size];

    let inv = 1.0 / libm::sqrt(size as f64);
    let ones = vec![inv; size];
    apply_adjacency(cube, &ones, &mut y);
    matvecs += 1;
    let r1 = residual(&y, &ones, d);

    let mut values = vec![d];
    let mut residuals = vec![r1];
    let mut locked = vec![ones];
    if cube.n() >= 1 && count > 1 {
        // The top coordinate splits the vertex range into halves.
        let half = size / 2;
        let g: Vec<f64> = (0..size).map(|x| if x >= half { -inv } else { inv }).collect();
        apply_adjacency(cube, &g, &mut y);
        matvecs += 1;
        let r2 = residual(&y, &g, d - 2.0);
        let scale = TOLERANCE * d.max(1.0);
        if r1 > scale || r2 > scale {
            return Err(Error::Internal("regular-graph eigenvectors failed verification"));
        }
        locked.push(g);
        let mut found: Vec<(f64, f64)> = vec![(d - 2.0, r2)];
        let mut attempt = 0u32;
        while (attempt as usize) < count - 1 && locked.len() < size {
            let (theta, vector, res, used) = leading_pair(cube, &locked, START_TAG + attempt)?;
            matvecs += used;
            found.push((theta, res));
            locked.push(vector);
            attempt += 1;
        }
        found.sort_by(|a, b| b.0.total_cmp(&a.0));
        for (v, r) in found.into_iter().take(count - 1) {
            values.push(v);
            residuals.push(r);
        }
    }
    Ok(TopEigenvalues { values, residuals, matvecs })
}

fn residual(ax: &[f64], x: &[f64], lambda: f64) -> f64 {
    let mut s = 0.0;
    for (a, b) in ax.iter().zip(x) {
        let r = a - lambda * b;
        s += r * r;
    }
    libm::sqrt(s)
}

/// Largest eigenpair of `A` restricted to the complement of `locked`.
fn leading_pair(cube: &TwistedCube, locked: &[Vec<f64>], tag: u32) -> Result<(f64, Vec<f64>, f64, usize)> {
    let size = cube.vertex_count();
    let free = size - locked.len();
    let m = (BASIS_BUDGET / size).clamp(8, 80).min(free);
    let keep = (m / 3).max(1).min(m.saturating_sub(2)).max(1);

    let mut stream = StreamKey::new(cube.spec().seed, tag, size as u64).stream();
    let mut v0: Vec<f64> = (0..size).map(|_| stream.unit_f64() - 0.5).collect();
    orthogonalize(&mut v0, locked);
    let nv = norm(&v0);
    if nv == 0.0 {
        return Err(Error::Internal("start vector vanished after deflation"));
    }
    v0.iter_mut().for_each(|x| *x /= nv);

    let mut basis: Vec<Vec<f64>> = vec![v0];
    let mut h = vec![0.0; m * m];
    let mut start = 0;
    let mut matvecs = 0;
    let mut w = vec![0.0; size];
    let mut last_residual = f64::INFINITY;
    for _restart in 0..RESTART_CAP {
        let mut beta = 0.0;
        let mut j = start;
        while j < m {
            apply_adjacency(cube, &basis[j], &mut w);
            matvecs += 1;
            orthogonalize(&mut w, locked);
            let mut coeff = vec![0.0; basis.len()];
            for _ in 0..2 {
                for (i, q) in basis.iter().enumerate() {
                    let c = dot(q, &w);
                    axpy(-c, q, &mut w);
                    coeff[i] += c;
                }
            }
            for (i, &c) in coeff.iter().enumerate().take(j + 1) {
                h[i * m + j] = c;
                h[j * m + i] = c;
            }
            beta = norm(&w);
            if j + 1 < m {
                h[(j + 1) * m + j] = beta;
                h[j * m + j + 1] = beta;
            }
            if beta <= 1e-14 * (1.0 + h[j * m + j].abs()) {
                // Invariant subspace found.
                let dim = j + 1;
                let sub: Vec<f64> = (0..dim).flat_map(|r| (0..dim).map(move |c| (r, c))).map(|(r, c)| h[r * m + c]).collect();
                let (vals, vecs) = jacobi_eigenpairs(&sub, dim);
                let y = combine(&basis[..dim], &vecs, dim, 0);
                return Ok((vals[0], y, 0.0, matvecs));
            }
            let next: Vec<f64> = w.iter().map(|x| x / beta).collect();
            basis.push(next);
            j += 1;
        }
        // Rayleigh–Ritz on the m-dimensional basis; basis[m] is the residual direction.
        let (vals, vecs) = jacobi_eigenpairs(&h, m);
        let res = (beta * vecs[(m - 1) * m]).abs();
        last_residual = res;
        if res <= TOLERANCE * vals[0].abs().max(1.0) {
            let y = combine(&basis[..m], &vecs, m, 0);
            return Ok((vals[0], y, res, matvecs));
        }
        // Thick restart with the leading `keep` Ritz vectors.
        let mut restarted: Vec<Vec<f64>> = (0..keep).map(|c| combine(&basis[..m], &vecs, m, c)).collect();
        let tail = basis.pop().expect("residual direction");
        h.iter_mut().for_each(|x| *x = 0.0);
        for c in 0..keep {
            h[c * m + c] = vals[c];
            let arrow = beta * vecs[(m - 1) * m + c];
            h[keep * m + c] = arrow;
            h[c * m + keep] = arrow;
        }
        restarted.push(tail);
        basis = restarted;
        start = keep;
    }
    Err(Error::NoConvergence { iterations: RESTART_CAP, residual: last_residual })
}

/// Ritz vector `basis · vecs[:, column]`.
fn combine(basis: &[Vec<f64>], vecs: &[f64], dim: usize, column: usize) -> Vec<f64> {
    let mut y = vec![0.0; basis[0].len()];
    for (i, q) in basis.iter().enumerate() {
        axpy(vecs[i * dim + column], q, &mut y);
    }
    let ny = norm(&y);
    y.iter_mut().for_each(|x| *x /= ny);
    y
}
