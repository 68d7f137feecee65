//! LU determinant, one-sided Jacobi SVD, and the rank/pseudoinverse built on it.

use super::matrix::{CMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Default relative threshold for numerical rank and pseudoinverse.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

const MAX_JACOBI_SWEEPS: usize = 80;

/// Determinant via LU factorization with partial pivoting.
pub fn cm_det(a: &CMatrix) -> Result<C64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "cm_det",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    // closed forms keep integer inputs exact
    match n {
        0 => return Ok(ONE),
        1 => return Ok(a[(0, 0)]),
        2 => return Ok(a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)]),
        _ => {}
    }
    let mut lu = a.clone();
    let mut det = ONE;
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))
            .unwrap();
        if lu[(pivot, k)] == ZERO {
            return Ok(ZERO);
        }
        if pivot != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            det = -det;
        }
        let p = lu[(k, k)];
        det *= p;
        for i in k + 1..n {
            let f = lu[(i, k)] / p;
            if f == ZERO {
                continue;
            }
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
        }
    }
    Ok(det)
}

/// Thin singular value decomposition `a = u * diag(s) * v^H`.
///
/// With `k = min(rows, cols)`, `u` is `rows x k` and `v` is `cols x k`, both with
/// orthonormal columns; `s` is non-negative and sorted in descending order.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub v: CMatrix,
}

impl Svd {
    /// `u * diag(s) * v^H`.
    pub fn reconstruct(&self) -> CMatrix {
        let us = CMatrix::from_fn(self.u.rows(), self.s.len(), |i, j| {
            self.u[(i, j)] * self.s[j]
        });
        &us * &self.v.adjoint()
    }
}

pub fn cm_svd(a: &CMatrix) -> Svd {
    if a.rows() >= a.cols() {
        jacobi_svd_tall(a)
    } else {
        let t = jacobi_svd_tall(&a.adjoint());
        Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        }
    }
}

// Hestenes one-sided Jacobi on the columns of a tall matrix.
fn jacobi_svd_tall(a: &CMatrix) -> Svd {
    let (m, n) = a.shape();
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect())
        .collect();

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = w[p].iter().zip(&w[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut w, p, q, c, s, phase);
                rotate_pair(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(f64, usize)> = w
        .iter()
        .enumerate()
        .map(|(j, col)| (col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(), j))
        .collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));

    let s_max = order.first().map_or(0.0, |o| o.0);
    let negligible = s_max * f64::EPSILON * (m.max(1) as f64);
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut missing = Vec::new();
    let mut s = Vec::with_capacity(n);
    let mut v_cols = Vec::with_capacity(n);
    for (k, &(sigma, j)) in order.iter().enumerate() {
        s.push(sigma);
        v_cols.push(v[j].clone());
        if sigma > negligible && sigma > 0.0 {
            u_cols.push(w[j].iter().map(|z| z / sigma).collect());
        } else {
            u_cols.push(vec![ZERO; m]);
            missing.push(k);
        }
    }
    complete_orthonormal(&mut u_cols, &missing, m);

    Svd {
        u: CMatrix::from_columns(m, &u_cols).expect("column heights agree"),
        s,
        v: CMatrix::from_columns(n, &v_cols).expect("column heights agree"),
    }
}

fn rotate_pair(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, phase: C64) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let up = *x;
        let uq = *y * phase;
        *x = up * c - uq * s;
        *y = up * s + uq * c;
    }
}

// Fills the listed columns with unit vectors orthogonal to every other column.
fn complete_orthonormal(cols: &mut [Vec<C64>], missing: &[usize], m: usize) {
    let mut candidate = 0;
    for &k in missing {
        while candidate < m {
            let mut x = vec![ZERO; m];
            x[candidate] = ONE;
            candidate += 1;
            for _ in 0..2 {
                for (j, col) in cols.iter().enumerate() {
                    if j == k || (missing.contains(&j) && col.iter().all(|z| *z == ZERO)) {
                        continue;
                    }
                    let proj: C64 = col.iter().zip(&x).map(|(c, xi)| c.conj() * xi).sum();
                    for (xi, ci) in x.iter_mut().zip(col) {
                        *xi -= proj * ci;
                    }
                }
            }
            let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-8 {
                cols[k] = x.into_iter().map(|z| z / norm).collect();
                break;
            }
        }
    }
}

/// Number of singular values above `tol * s_max`. The zero matrix has rank 0.
pub fn cm_rank(a: &CMatrix, tol: f64) -> usize {
    rank_from_singular_values(&cm_svd(a).s, tol)
}

pub(crate) fn rank_from_singular_values(s: &[f64], tol: f64) -> usize {
    let s_max = s.first().copied().unwrap_or(0.0);
    if s_max == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > tol * s_max).count()
}

/// Moore-Penrose pseudoinverse with relative singular-value cutoff `tol`.
pub fn cm_pinv(a: &CMatrix, tol: f64) -> CMatrix {
    let svd = cm_svd(a);
    let s_max = svd.s.first().copied().unwrap_or(0.0);
    let (m, n) = a.shape();
    let mut out = CMatrix::zeros(n, m);
    if s_max == 0.0 {
        return out;
    }
    for (k, &sigma) in svd.s.iter().enumerate() {
        if sigma <= tol * s_max {
            continue;
        }
        let inv = 1.0 / sigma;
        for i in 0..n {
            let vik = svd.v[(i, k)] * inv;
            for j in 0..m {
                out[(i, j)] += vik * svd.u[(j, k)].conj();
            }
        }
    }
    out
}

/// Largest residual of the four Penrose equations for a candidate `x` of `a`,
/// measured as a Frobenius norm.
pub fn penrose_residual(a: &CMatrix, x: &CMatrix) -> Result<f64> {
    let ax = a.matmul(x)?;
    let xa = x.matmul(a)?;
    let r1 = (&(&ax * a) - a).frobenius_norm();
    let r2 = (&(&xa * x) - x).frobenius_norm();
    let r3 = (&ax.adjoint() - &ax).frobenius_norm();
    let r4 = (&xa.adjoint() - &xa).frobenius_norm();
    Ok(r1.max(r2).max(r3).max(r4))
}
