//! Complex eigendecomposition: Householder reduction to Hessenberg form, shifted
//! QR iteration to a Schur form, and back-substitution for eigenvectors.

use super::matrix::{CMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// QR sweeps allowed per matrix dimension before giving up.
pub const QR_SWEEPS_PER_DIM: usize = 100;

/// Eigenvalues with algebraic multiplicity and unit right eigenvectors stored column-wise.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<C64>,
    pub vectors: CMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }
}

/// Complex Schur form `a = z * t * z^H` with `t` upper triangular and `z` unitary.
#[derive(Clone, Debug)]
pub struct Schur {
    pub t: CMatrix,
    pub z: CMatrix,
}

pub fn cm_schur(a: &CMatrix) -> Result<Schur> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "cm_schur",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut h = a.clone();
    let mut z = CMatrix::identity(n);
    hessenberg(&mut h, &mut z);
    qr_iterate(&mut h, &mut z)?;
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(Schur { t: h, z })
}

/// Eigenvalues and right eigenvectors, sorted by (real, imaginary) part.
pub fn cm_eigen(a: &CMatrix) -> Result<Eigen> {
    let Schur { t, z } = cm_schur(a)?;
    let n = t.rows();
    let tnorm = t.frobenius_norm();
    let small = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);

    let mut pairs: Vec<(C64, Vec<C64>)> = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut y = vec![ZERO; n];
        y[k] = ONE;
        for j in (0..k).rev() {
            let mut sum = ZERO;
            for l in j + 1..=k {
                sum += t[(j, l)] * y[l];
            }
            let mut d = t[(j, j)] - lambda;
            if d.norm() < small {
                d = C64::new(small, 0.0);
            }
            y[j] = -sum / d;
            let big = y.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if big > 1e100 {
                for v in y.iter_mut() {
                    *v /= big;
                }
            }
        }
        let mut v: Vec<C64> = (0..n)
            .map(|i| (0..=k).map(|l| z[(i, l)] * y[l]).sum())
            .collect();
        normalize_vector(&mut v);
        pairs.push((lambda, v));
    }

    let scale = tnorm.max(f64::MIN_POSITIVE);
    pairs.sort_by(|a, b| eigen_order(a.0, b.0, scale));
    let values = pairs.iter().map(|p| p.0).collect();
    let cols: Vec<Vec<C64>> = pairs.into_iter().map(|p| p.1).collect();
    Ok(Eigen {
        values,
        vectors: CMatrix::from_columns(n, &cols)?,
    })
}

/// Total order on eigenvalues: real parts are compared after snapping to a grid
/// relative to `scale` so that rounding noise does not reorder conjugate-like pairs.
pub fn eigen_order(a: C64, b: C64, scale: f64) -> std::cmp::Ordering {
    let q = 1e-9 * scale;
    let ka = (a.re / q).round();
    let kb = (b.re / q).round();
    ka.total_cmp(&kb).then(a.im.total_cmp(&b.im))
}

/// Unit 2-norm with the largest-magnitude component made real and positive.
pub(crate) fn normalize_vector(v: &mut [C64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    let mut pivot = v[0];
    let mut best = -1.0;
    for z in v.iter() {
        // strict improvement beyond rounding keeps ties on the first index
        if z.norm() > best * (1.0 + 1e-12) {
            best = z.norm();
            pivot = *z;
        }
    }
    let phase = pivot.conj() / pivot.norm();
    for z in v.iter_mut() {
        *z = *z * phase / norm;
    }
}

fn hessenberg(h: &mut CMatrix, z: &mut CMatrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let alpha = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == 0.0 {
            ONE
        } else {
            x0 / x0.norm()
        };
        let mut v = x;
        v[0] = x0 + phase * alpha;
        let vv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vv == 0.0 {
            continue;
        }
        let beta = 2.0 / vv;
        // H <- P H
        for j in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)])
                .sum();
            let s = s * beta;
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= vr * s;
            }
        }
        // H <- H P, Z <- Z P
        for m in [&mut *h, &mut *z] {
            for i in 0..n {
                let s: C64 = v
                    .iter()
                    .enumerate()
                    .map(|(r, vr)| m[(i, k + 1 + r)] * vr)
                    .sum();
                let s = s * beta;
                for (r, vr) in v.iter().enumerate() {
                    m[(i, k + 1 + r)] -= s * vr.conj();
                }
            }
        }
        h[(k + 1, k)] = -phase * alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

// Givens rotation G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
fn givens(a: C64, b: C64) -> (f64, C64) {
    let an = a.norm();
    let r = an.hypot(b.norm());
    if r == 0.0 {
        (1.0, ZERO)
    } else if an == 0.0 {
        (0.0, ONE)
    } else {
        (an / r, (a / an) * b.conj() / r)
    }
}

fn qr_iterate(h: &mut CMatrix, z: &mut CMatrix) -> Result<()> {
    let n = h.rows();
    if n < 2 {
        return Ok(());
    }
    let cap = QR_SWEEPS_PER_DIM * n;
    let hnorm = h.frobenius_norm();
    let mut sweeps = 0usize;
    let mut hi = n - 1;
    let mut iter_here = 0usize;
    let mut rots: Vec<(f64, C64)> = Vec::with_capacity(n);

    while hi > 0 {
        // locate the top of the active unreduced block
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut diag = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if diag == 0.0 {
                diag = hnorm;
            }
            if sub <= f64::EPSILON * diag {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter_here = 0;
            continue;
        }

        sweeps += 1;
        if sweeps > cap {
            return Err(Error::NonConvergence { sweeps: cap });
        }
        iter_here += 1;

        let shift = if iter_here % 11 == 10 {
            let sub = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + C64::new(0.75 * sub, 0.5 * sub)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for k in l..=hi {
            h[(k, k)] -= shift;
        }
        rots.clear();
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = ZERO;
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = l + idx;
            let rmax = (k + 2).min(hi + 1);
            for i in 0..rmax {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = x * c + y * s.conj();
                z[(i, k + 1)] = -x * s + y * c;
            }
        }
        for k in l..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(())
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m = (a + d) * 0.5;
    let r1 = m + disc;
    let r2 = m - disc;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// Largest `‖a v - λ v‖` over the returned pairs.
pub fn eigen_residual(a: &CMatrix, e: &Eigen) -> f64 {
    let av = a * &e.vectors;
    (0..e.values.len())
        .map(|k| {
            (0..a.rows())
                .map(|i| (av[(i, k)] - e.vectors[(i, k)] * e.values[k]).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}
