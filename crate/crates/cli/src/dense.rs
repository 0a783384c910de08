//! Dense symmetric eigenvalues for spectra too large for the portable
//! solver: a blocked reduction to band form whose updates are matrix
//! products, Givens bulge chasing down to tridiagonal form, then implicit QL.

use twistcube_core::spectral::eigen::{tridiagonal_eigenvalues, Tridiagonal};
use twistcube_core::spectral::{full_spectrum_with, SpectrumResult};
use twistcube_core::{Guard, Result, TwistedCube};

/// Half-bandwidth of the intermediate band matrix.
pub const BAND: usize = 48;

/// Every eigenvalue of the symmetric row-major matrix `a`, sorted descending.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, dim: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), dim * dim, "matrix must be dim x dim");
    let b = BAND.min(dim.saturating_sub(1)).max(1);
    reduce_to_band(&mut a, dim, b);
    let (diagonal, off) = band_to_tridiagonal(&a, dim, b);
    drop(a);
    tridiagonal_eigenvalues(&Tridiagonal { diagonal, off })
}

/// Full adjacency spectrum of a cube using [`symmetric_eigenvalues`].
pub fn spectrum(cube: &TwistedCube, guard: Guard) -> Result<SpectrumResult> {
    full_spectrum_with(cube, guard, symmetric_eigenvalues)
}

/// `C = alpha A B + beta C` on strided row-major views.
#[allow(clippy::too_many_arguments)]
fn gemm(
    m: usize, k: usize, n: usize, alpha: f64,
    a: *const f64, rsa: usize, csa: usize,
    b: *const f64, rsb: usize, csb: usize,
    beta: f64, c: *mut f64, rsc: usize, csc: usize,
) {
    if m == 0 || n == 0 {
        return;
    }
    // SAFETY: callers pass pointers into live buffers whose extents cover the
    // requested shapes and strides; `c` does not alias `a` or `b`.
    unsafe {
        matrixmultiply::dgemm(
            m, k, n, alpha, a, rsa as isize, csa as isize, b, rsb as isize, csb as isize, beta, c,
            rsc as isize, csc as isize,
        )
    }
}

/// Reduces the symmetric matrix `a` (row-major, both triangles stored) to a
/// band of half-width `b`. On return the lower band of `a` holds the result.
fn reduce_to_band(a: &mut [f64], n: usize, b: usize) {
    assert_eq!(a.len(), n * n);
    assert!(b >= 1);
    let mut panel = Vec::new(); // column-major m x k
    let mut tau = vec![0.0; b];
    let mut t = vec![0.0; b * b];
    let mut x = Vec::new();
    let mut w = Vec::new();
    let mut u = Vec::new();
    let mut u_swapped = Vec::new();
    let mut mm = vec![0.0; b * b];
    let mut j = 0;
    while j + b + 1 < n {
        let r0 = j + b;
        let m = n - r0;
        let k = b.min(m - 1);
        // Copy panel rows r0.., columns j..j+b into column-major storage.
        panel.clear();
        panel.resize(m * b, 0.0);
        for s in 0..b {
            for i in 0..m {
                panel[s * m + i] = a[(r0 + i) * n + j + s];
            }
        }
        // Householder QR of the first k columns, applied to all b.
        for s in 0..k {
            let (head, tail) = panel.split_at_mut((s + 1) * m);
            let col = &mut head[s * m..];
            let (beta, ts) = householder(&mut col[s..]);
            tau[s] = ts;
            if ts != 0.0 {
                let v = &col[s..];
                for c in 0..b - s - 1 {
                    let other = &mut tail[c * m + s..c * m + m];
                    let mut dot = other[0];
                    for i in 1..v.len() {
                        dot += v[i] * other[i];
                    }
                    let f = ts * dot;
                    other[0] -= f;
                    for i in 1..v.len() {
                        other[i] -= f * v[i];
                    }
                }
            }
            col[s] = beta;
        }
        // Write R back (lower triangle and its mirror) and zero below.
        for s in 0..b {
            for i in 0..m {
                let val = if i <= s { panel[s * m + i] } else { 0.0 };
                a[(r0 + i) * n + j + s] = val;
                a[(j + s) * n + r0 + i] = val;
            }
        }
        // V as row-major m x k with unit diagonal, zeros above.
        u.clear();
        u.resize(m * 2 * k, 0.0);
        for s in 0..k {
            u[s * 2 * k + k + s] = 1.0;
            for i in s + 1..m {
                u[i * 2 * k + k + s] = panel[s * m + i];
            }
        }
        // T from the forward recurrence.
        t.iter_mut().for_each(|e| *e = 0.0);
        for s in 0..k {
            t[s * b + s] = tau[s];
            if tau[s] == 0.0 {
                continue;
            }
            // z = V[:, 0..s]^T v_s
            let mut z = vec![0.0; s];
            for i in s..m {
                let vi = u[i * 2 * k + k + s];
                if vi == 0.0 {
                    continue;
                }
                for p in 0..s {
                    z[p] += u[i * 2 * k + k + p] * vi;
                }
            }
            for p in 0..s {
                let mut acc = 0.0;
                for q in p..s {
                    acc += t[p * b + q] * z[q];
                }
                t[p * b + s] = -tau[s] * acc;
            }
        }
        let vptr = u[k..].as_ptr();
        let rs_v = 2 * k;
        let sptr = a[r0 * n + r0..].as_mut_ptr();
        // X = S V
        x.clear();
        x.resize(m * k, 0.0);
        gemm(m, m, k, 1.0, sptr, n, 1, vptr, rs_v, 1, 0.0, x.as_mut_ptr(), k, 1);
        // W = X T
        w.clear();
        w.resize(m * k, 0.0);
        gemm(m, k, k, 1.0, x.as_ptr(), k, 1, t.as_ptr(), b, 1, 0.0, w.as_mut_ptr(), k, 1);
        // M = T^T (V^T W)
        let mut vtw = vec![0.0; k * k];
        gemm(k, m, k, 1.0, vptr, 1, rs_v, w.as_ptr(), k, 1, 0.0, vtw.as_mut_ptr(), k, 1);
        gemm(k, k, k, 1.0, t.as_ptr(), 1, b, vtw.as_ptr(), k, 1, 0.0, mm.as_mut_ptr(), k, 1);
        // Z = W - 1/2 V M, stored in the first k columns of u.
        for i in 0..m {
            u[i * 2 * k..i * 2 * k + k].copy_from_slice(&w[i * k..i * k + k]);
        }
        gemm(m, k, k, -0.5, vptr, rs_v, 1, mm.as_ptr(), k, 1, 1.0, u.as_mut_ptr(), rs_v, 1);
        // S -= [Z V] [V Z]^T
        u_swapped.clear();
        u_swapped.resize(m * 2 * k, 0.0);
        for i in 0..m {
            let row = &u[i * 2 * k..(i + 1) * 2 * k];
            let dst = &mut u_swapped[i * 2 * k..(i + 1) * 2 * k];
            dst[..k].copy_from_slice(&row[k..]);
            dst[k..].copy_from_slice(&row[..k]);
        }
        gemm(m, 2 * k, m, -1.0, u.as_ptr(), rs_v, 1, u_swapped.as_ptr(), 1, rs_v, 1.0, sptr, n, 1);
        j += b;
    }
}

/// Householder reflector for `x`: returns (beta, tau) and leaves v[1..] in x[1..].
fn householder(x: &mut [f64]) -> (f64, f64) {
    let alpha = x[0];
    let scale = x.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    if x.len() == 1 || scale == 0.0 {
        return (alpha, 0.0);
    }
    let mut sigma = 0.0;
    for v in &x[1..] {
        let y = v / scale;
        sigma += y * y;
    }
    if sigma == 0.0 {
        return (alpha, 0.0);
    }
    let a_s = alpha / scale;
    let norm = scale * (a_s * a_s + sigma).sqrt();
    let beta = if alpha >= 0.0 { -norm } else { norm };
    let inv = 1.0 / (alpha - beta);
    for v in &mut x[1..] {
        *v *= inv;
    }
    (beta, (beta - alpha) / beta)
}

/// Lower band storage with room for one bulge diagonal.
struct Band {
    n: usize,
    width: usize,
    data: Vec<f64>,
}

impl Band {
    fn get(&self, i: usize, c: usize) -> f64 {
        self.data[i * self.width + (i - c)]
    }
    fn at(&mut self, i: usize, c: usize) -> &mut f64 {
        &mut self.data[i * self.width + (i - c)]
    }

    /// Applies the rotation [c s; -s c] to rows/columns p, p+1.
    fn rotate(&mut self, p: usize, c: f64, s: f64) {
        let q = p + 1;
        let reach = self.width - 1;
        let lo = q.saturating_sub(reach);
        let w = self.width;
        for t in lo..p {
            let ip = p * w + (p - t);
            let iq = q * w + (q - t);
            let (x, y) = (self.data[ip], self.data[iq]);
            self.data[ip] = c * x + s * y;
            self.data[iq] = -s * x + c * y;
        }
        let hi = (p + reach).min(self.n - 1);
        for t in q + 1..=hi {
            let ip = t * w + (t - p);
            let iq = ip - 1;
            let (x, y) = (self.data[ip], self.data[iq]);
            self.data[ip] = c * x + s * y;
            self.data[iq] = -s * x + c * y;
        }
        let app = self.get(p, p);
        let aqq = self.get(q, q);
        let apq = self.get(q, p);
        *self.at(p, p) = c * c * app + 2.0 * c * s * apq + s * s * aqq;
        *self.at(q, q) = s * s * app - 2.0 * c * s * apq + c * c * aqq;
        *self.at(q, p) = (c * c - s * s) * apq + c * s * (aqq - app);
    }

    /// Zeros entry (r, col) against (r-1, col) with a rotation of rows r-1, r.
    fn annihilate(&mut self, r: usize, col: usize) {
        let a = self.get(r - 1, col);
        let b = self.get(r, col);
        if b == 0.0 {
            return;
        }
        let h = a.hypot(b);
        let (c, s) = (a / h, b / h);
        self.rotate(r - 1, c, s);
        *self.at(r, col) = 0.0;
    }
}

/// Reduces the lower band (half-width `b`) of the row-major matrix `a` to
/// tridiagonal form, returning (diagonal, subdiagonal).
fn band_to_tridiagonal(a: &[f64], n: usize, b: usize) -> (Vec<f64>, Vec<f64>) {
    let width = b + 2;
    let mut band = Band { n, width, data: vec![0.0; n * width] };
    for i in 0..n {
        for d in 0..=b.min(i) {
            band.data[i * width + d] = a[i * n + i - d];
        }
    }
    if b > 1 {
        for j in 0..n.saturating_sub(2) {
            for d in (2..=b.min(n - 1 - j)).rev() {
                let i = j + d;
                band.annihilate(i, j);
                // Chase the bulge at (k + b, k - 1).
                let mut k = i;
                while k + b < n {
                    band.annihilate(k + b, k - 1);
                    k += b;
                }
            }
        }
    }
    let diag = (0..n).map(|i| band.get(i, i)).collect();
    let off = (1..n).map(|i| band.get(i, i - 1)).collect();
    (diag, off)
}
