//! Central determinant and central characteristic polynomial.

use crate::complex_linalg::{cm_charpoly, cm_det, CPolynomial, C64};
use crate::error::{Error, Result};
use crate::matrix::BqMatrix;
use crate::scalar::Biquaternion;

/// Relative tolerance for treating `|A|_c` or `n(μ)` as zero in the scaling probe.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Relative tolerance used to match the measured scaling ratio against `n(μ)^k`.
pub const SCALING_MATCH_TOL: f64 = 1e-9;

/// `|A|_c = det Ψ(A)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CentralDet(pub C64);

impl CentralDet {
    pub fn value(&self) -> C64 {
        self.0
    }

    /// Principal square root of `|A|_c`. The branch is a convention: `-sqrt` is
    /// equally a square root and neither is distinguished by the algebra.
    pub fn sqrt(&self) -> C64 {
        self.0.sqrt()
    }
}

fn require_square(a: &BqMatrix, op: &'static str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            op,
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

pub fn central_det(a: &BqMatrix) -> Result<CentralDet> {
    require_square(a, "central_det")?;
    Ok(CentralDet(cm_det(&a.psi_big())?))
}

/// `det(λ I - Ψ(A))`, monic of degree `2n`.
pub fn central_charpoly(a: &BqMatrix) -> Result<CPolynomial> {
    require_square(a, "central_charpoly")?;
    cm_charpoly(&a.psi_big())
}

/// `p(A)` by Horner's scheme in biquaternion matrix arithmetic.
pub fn eval_poly(p: &CPolynomial, a: &BqMatrix) -> Result<BqMatrix> {
    require_square(a, "eval_poly")?;
    let n = a.rows();
    let mut acc = BqMatrix::zeros(n, n);
    for &c in p.coeffs().iter().rev() {
        acc = a.matmul(&acc)?;
        for i in 0..n {
            let d = acc.get(i, i) + Biquaternion::complex(c);
            acc.set(i, i, d);
        }
    }
    Ok(acc)
}

/// Residual of `p_A(A)` with the scale it should be compared against.
#[derive(Clone, Copy, Debug)]
pub struct CayleyHamilton {
    pub residual: f64,
    /// `Σ |c_k| ‖A‖^k`, the size of the terms that cancel.
    pub scale: f64,
}

impl CayleyHamilton {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual / self.scale
        } else {
            self.residual
        }
    }
}

pub fn cayley_hamilton(a: &BqMatrix) -> Result<CayleyHamilton> {
    let p = central_charpoly(a)?;
    let residual = eval_poly(&p, a)?.norm();
    Ok(CayleyHamilton {
        residual,
        scale: p.magnitude_at(a.norm()),
    })
}

/// `‖p_A(A)‖`.
pub fn cayley_hamilton_residual(a: &BqMatrix) -> Result<f64> {
    Ok(cayley_hamilton(a)?.residual)
}

fn triangularity(a: &BqMatrix) -> (f64, f64) {
    let n = a.rows();
    let (mut lower, mut upper) = (0.0f64, 0.0f64);
    for i in 0..n {
        for j in 0..n {
            let m = a.get(i, j).magnitude();
            if i > j {
                lower = lower.max(m);
            } else if i < j {
                upper = upper.max(m);
            }
        }
    }
    (lower, upper)
}

/// Product of the weak norms of the diagonal of an upper or lower triangular matrix.
pub fn triangular_central_det(a: &BqMatrix) -> Result<CentralDet> {
    require_square(a, "triangular_central_det")?;
    let (lower, upper) = triangularity(a);
    let tol = 1e-12 * (1.0 + a.norm());
    if lower > tol && upper > tol {
        return Err(Error::NotTriangular);
    }
    let mut d = C64::new(1.0, 0.0);
    for i in 0..a.rows() {
        d *= a.get(i, i).weak_norm();
    }
    Ok(CentralDet(d))
}

/// Measured law `|μ A|_c = n(μ)^k |A|_c`.
#[derive(Clone, Copy, Debug)]
pub struct ScalingProbe {
    pub exponent: usize,
    /// `|μ A|_c / |A|_c`.
    pub ratio: C64,
    /// Relative mismatch of `ratio` against `n(μ)^exponent`.
    pub mismatch: f64,
}

/// Determines which exponent `k ∈ {n, 2n}` satisfies `|μ A|_c = n(μ)^k |A|_c`.
///
/// The block-diagonal similarity of `Ψ(μ I)` to `n` copies of `ψ(μ)` gives
/// `k = n`. When both exponents fit (e.g. `n(μ) = 1`) `n` is reported.
pub fn scalar_scaling_law_probe(a: &BqMatrix, mu: Biquaternion) -> Result<ScalingProbe> {
    require_square(a, "scalar_scaling_law_probe")?;
    let n = a.rows();
    let base = central_det(a)?.0;
    let scale = a.psi_big().frobenius_norm().max(1.0).powi(2 * n as i32);
    if base.norm() <= DEGENERATE_TOL * scale {
        return Err(Error::DegenerateProbe("|A|_c is numerically zero"));
    }
    let nm = mu.weak_norm();
    if mu.is_zero_divisor() {
        return Err(Error::DegenerateProbe("n(mu) is numerically zero"));
    }
    let ratio = central_det(&a.scale_left(mu))?.0 / base;
    let mut best: Option<ScalingProbe> = None;
    for k in [n, 2 * n] {
        let expected = nm.powu(k as u32);
        let mismatch = (ratio - expected).norm() / expected.norm().max(f64::MIN_POSITIVE);
        if best.map_or(true, |b| mismatch < b.mismatch - SCALING_MATCH_TOL) {
            best = Some(ScalingProbe {
                exponent: k,
                ratio,
                mismatch,
            });
        }
    }
    Ok(best.expect("two candidates"))
}
