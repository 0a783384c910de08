//! Dense symmetric eigenvalues: Householder tridiagonalization followed by
//! implicit QL iterations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix: `diagonal[i]` and `off[i]` coupling `i, i+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diagonal: Vec<f64>,
    pub off: Vec<f64>,
}

/// Reduces the symmetric matrix stored row-major in `a` (only the lower
/// triangle is read) to tridiagonal form. `a` is overwritten.
///
/// The rank-2 update of each step is fused with the symmetric product of the
/// next step, so the lower triangle is streamed once per step.
pub fn tridiagonalize(a: &mut [f64], dim: usize) -> Tridiagonal {
    assert_eq!(a.len(), dim * dim);
    let mut diagonal = vec![0.0; dim];
    let mut off = vec![0.0; dim.saturating_sub(1)];
    if dim == 0 {
        return Tridiagonal { diagonal, off };
    }
    if dim == 1 {
        diagonal[0] = a[0];
        return Tridiagonal { diagonal, off };
    }

    let mut v = vec![0.0; dim];
    let mut w = vec![0.0; dim];
    let mut p = vec![0.0; dim];
    let mut v_next = vec![0.0; dim];
    let mut p_next = vec![0.0; dim];

    // Step 0: reflector and a plain symmetric product.
    diagonal[0] = a[0];
    let mut tau = reflector(a, dim, 0, &mut v, &mut off[0]);
    if tau != 0.0 {
        symmetric_product(a, dim, 1, &v[..dim - 1], &mut p[..dim - 1]);
        p[..dim - 1].iter_mut().for_each(|x| *x *= tau);
    }

    for k in 0..dim - 1 {
        let m = dim - k - 1;
        // Rank-2 correction vector w = p - (tau/2)(p·v) v.
        if tau != 0.0 {
            let pv: f64 = p[..m].iter().zip(&v[..m]).map(|(a, b)| a * b).sum();
            let half = 0.5 * tau * pv;
            for t in 0..m {
                w[t] = p[t] - half * v[t];
            }
        }
        let row0 = (k + 1) * dim + (k + 1);
        if tau != 0.0 {
            a[row0] -= 2.0 * v[0] * w[0];
        }
        diagonal[k + 1] = a[row0];
        if m == 1 {
            break;
        }
        // Column k+1 below the diagonal after this step's update.
        for r in 1..m {
            let i = k + 1 + r;
            let idx = i * dim + (k + 1);
            if tau != 0.0 {
                a[idx] -= v[r] * w[0] + w[r] * v[0];
            }
        }
        let tau_next = reflector(a, dim, k + 1, &mut v_next, &mut off[k + 1]);
        let m_next = m - 1;
        p_next[..m_next].iter_mut().for_each(|x| *x = 0.0);

        // Fused pass: finish the update of rows k+2.. and accumulate the next product.
        for r in 1..m {
            let i = k + 1 + r;
            let base = i * dim + (k + 1);
            let row = &mut a[base..base + r + 1];
            let (vr, wr) = (v[r], w[r]);
            let update = tau != 0.0;
            let vn_r = v_next[r - 1];
            let len = r - 1;
            let body = &mut row[1..r];
            let (vs, ws) = (&v[1..r], &w[1..r]);
            let (vn, pn) = (&v_next[..len], &mut p_next[..len]);
            let mut acc = [0.0f64; 4];
            let chunked = len / 4 * 4;
            if update {
                let mut j = 0;
                while j < chunked {
                    for l in 0..4 {
                        let t = j + l;
                        let val = body[t] - (vr * ws[t] + wr * vs[t]);
                        body[t] = val;
                        acc[l] += val * vn[t];
                        pn[t] += vn_r * val;
                    }
                    j += 4;
                }
                for t in chunked..len {
                    let val = body[t] - (vr * ws[t] + wr * vs[t]);
                    body[t] = val;
                    acc[0] += val * vn[t];
                    pn[t] += vn_r * val;
                }
                row[r] -= 2.0 * vr * wr;
            } else {
                let mut j = 0;
                while j < chunked {
                    for l in 0..4 {
                        let t = j + l;
                        let val = body[t];
                        acc[l] += val * vn[t];
                        pn[t] += vn_r * val;
                    }
                    j += 4;
                }
                for t in chunked..len {
                    let val = body[t];
                    acc[0] += val * vn[t];
                    pn[t] += vn_r * val;
                }
            }
            p_next[r - 1] += row[r] * vn_r + (acc[0] + acc[1]) + (acc[2] + acc[3]);
        }
        if tau_next != 0.0 {
            p_next[..m_next].iter_mut().for_each(|x| *x *= tau_next);
        }
        core::mem::swap(&mut v, &mut v_next);
        core::mem::swap(&mut p, &mut p_next);
        tau = tau_next;
    }
    Tridiagonal { diagonal, off }
}

/// Householder reflector for column `k` below the diagonal. Writes `v` with
/// `v[0] = 1`, the resulting subdiagonal entry, and returns `tau`.
fn reflector(a: &[f64], dim: usize, k: usize, v: &mut [f64], sub: &mut f64) -> f64 {
    let m = dim - k - 1;
    let alpha = a[(k + 1) * dim + k];
    let mut scale = alpha.abs();
    for t in 1..m {
        scale = scale.max(a[(k + 1 + t) * dim + k].abs());
    }
    let mut sigma = 0.0;
    if scale > 0.0 {
        for t in 1..m {
            let x = a[(k + 1 + t) * dim + k] / scale;
            sigma += x * x;
        }
    }
    if sigma == 0.0 {
        *sub = alpha;
        v[..m].iter_mut().for_each(|x| *x = 0.0);
        v[0] = 1.0;
        return 0.0;
    }
    let a_s = alpha / scale;
    let norm = scale * libm::sqrt(a_s * a_s + sigma);
    let beta = if alpha >= 0.0 { -norm } else { norm };
    let denom = alpha - beta;
    v[0] = 1.0;
    for t in 1..m {
        v[t] = a[(k + 1 + t) * dim + k] / denom;
    }
    *sub = beta;
    (beta - alpha) / beta
}

/// `out = S x` for the trailing block of `a` starting at `start`, lower triangle only.
fn symmetric_product(a: &[f64], dim: usize, start: usize, x: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|o| *o = 0.0);
    for r in 0..x.len() {
        let i = start + r;
        let row = &a[i * dim + start..i * dim + i];
        let mut acc = 0.0;
        for (t, &val) in row.iter().enumerate() {
            acc += val * x[t];
            out[t] += x[r] * val;
        }
        out[r] += acc + a[i * dim + i] * x[r];
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with Wilkinson
/// shifts, sorted descending.
pub fn tridiagonal_eigenvalues(t: &Tridiagonal) -> Result<Vec<f64>> {
    let mut d = t.diagonal.clone();
    let mut e = t.off.clone();
    e.push(0.0);
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(|a, b| b.total_cmp(a));
    Ok(d)
}

/// Eigenpairs of a small symmetric tridiagonal matrix. Returns eigenvalues in
/// ascending order and the eigenvectors as columns of a row-major matrix.
pub fn tridiagonal_eigenpairs(t: &Tridiagonal) -> Result<(Vec<f64>, Vec<f64>)> {
    let dim = t.diagonal.len();
    let mut d = t.diagonal.clone();
    let mut e = t.off.clone();
    e.push(0.0);
    let mut z = vec![0.0; dim * dim];
    for i in 0..dim {
        z[i * dim + i] = 1.0;
    }
    ql_implicit(&mut d, &mut e, Some(&mut z))?;
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = idx.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![0.0; dim * dim];
    for (new, &old) in idx.iter().enumerate() {
        for r in 0..dim {
            vectors[r * dim + new] = z[r * dim + old];
        }
    }
    Ok((values, vectors))
}

fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let dim = d.len();
    // Off-diagonals below eps·|T| are dropped even where the neighboring
    // diagonal entries are tiny; otherwise clusters at zero never split off.
    let norm = (0..dim).map(|i| d[i].abs() + e.get(i).map_or(0.0, |x| x.abs())).fold(0.0, f64::max);
    let floor = f64::EPSILON * norm;
    for l in 0..dim {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < dim {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::NoConvergence { iterations, residual: e[l].abs() });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..dim {
                        let zk1 = z[k * dim + i + 1];
                        let zk = z[k * dim + i];
                        z[k * dim + i + 1] = s * zk + c * zk1;
                        z[k * dim + i] = c * zk - s * zk1;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenpairs of a small dense symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in descending order and the matching eigenvectors as
/// columns of a row-major matrix.
pub fn jacobi_eigenpairs(a: &[f64], dim: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = a.to_vec();
    let mut z = vec![0.0; dim * dim];
    for i in 0..dim {
        z[i * dim + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().max(f64::MIN_POSITIVE);
    for _ in 0..64 {
        let mut off = 0.0;
        for p in 0..dim {
            for q in p + 1..dim {
                off += a[p * dim + q] * a[p * dim + q];
            }
        }
        if off <= 1e-32 * scale {
            break;
        }
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[p * dim + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * dim + q] - a[p * dim + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = c * akp - s * akq;
                    a[k * dim + q] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = c * apk - s * aqk;
                    a[q * dim + k] = s * apk + c * aqk;
                }
                for k in 0..dim {
                    let zkp = z[k * dim + p];
                    let zkq = z[k * dim + q];
                    z[k * dim + p] = c * zkp - s * zkq;
                    z[k * dim + q] = s * zkp + c * zkq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.sort_by(|&x, &y| a[y * dim + y].total_cmp(&a[x * dim + x]));
    let values = idx.iter().map(|&i| a[i * dim + i]).collect();
    let mut vectors = vec![0.0; dim * dim];
    for (new, &old) in idx.iter().enumerate() {
        for r in 0..dim {
            vectors[r * dim + new] = z[r * dim + old];
        }
    }
    (values, vectors)
}

/// All eigenvalues of a dense symmetric matrix, sorted descending.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, dim: usize) -> Result<Vec<f64>> {
    let t = tridiagonalize(&mut a, dim);
    drop(a);
    tridiagonal_eigenvalues(&t)
}
