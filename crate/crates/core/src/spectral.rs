//! Right eigenvalues, regular right eigenpairs, and similarity classification of
//! square biquaternion matrices, all decided on the complex representations.

use crate::complex_linalg::{
    cm_eigen, cm_jordan_fingerprint, cm_pinv, cm_svd, CMatrix, JordanFingerprint, JordanTol, C64,
    DEFAULT_RANK_TOL, PAIRING_REL_TOL,
};
use crate::error::{Error, Result};
use crate::matrix::{e_frame, BqMatrix};
use crate::scalar::{Biquaternion, CanonicalCase, COMPONENT_TOL};

/// Independence (smallest singular value of the unit-column pair) below which two
/// eigenvectors of `Ψ(A)` are not used for a regular lift.
const INDEPENDENCE_TOL: f64 = 1e-6;
/// Relative residual accepted for an eigenpair handed to [`eigen_from_regular`].
pub const PAIR_RESIDUAL_TOL: f64 = 1e-8;

/// Complex adjoint vector `[X0 + X1 i; X2 - X3 i]` of a biquaternion column.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointVector(pub Vec<C64>);

impl AdjointVector {
    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn as_column(&self) -> CMatrix {
        CMatrix::new(self.0.len(), 1, self.0.clone()).expect("finite entries")
    }
}

pub fn adjoint_vector(x: &BqMatrix) -> Result<AdjointVector> {
    if x.cols() != 1 {
        return Err(Error::NotColumn {
            op: "adjoint_vector",
            cols: x.cols(),
        });
    }
    // first column of Ψ(X)
    Ok(AdjointVector(x.psi_big().column(0)))
}

/// `A X = X λ` with complex `λ`.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: C64,
    pub vector: BqMatrix,
    /// `‖A X - X λ‖`, Frobenius norm of the representation.
    pub residual: f64,
}

/// `A X = X λ` with biquaternion `λ` and `rank(X) = 1`.
#[derive(Clone, Debug)]
pub struct RegularEigenPair {
    pub value: Biquaternion,
    pub vector: BqMatrix,
    pub residual: f64,
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

/// `‖A X - X λ‖` for a biquaternion eigenvalue.
pub fn right_residual(a: &BqMatrix, x: &BqMatrix, lambda: Biquaternion) -> Result<f64> {
    Ok(a.matmul(x)?.try_sub(&x.scale_right(lambda))?.norm())
}

/// All `2n` complex right eigenpairs, one for each eigenpair `(λ, Y)` of `Ψ(A)`,
/// with eigenvector `X = E_{2n} Y`.
pub fn right_eigen_complex(a: &BqMatrix) -> Result<Vec<EigenPair>> {
    require_square(a, "right_eigen_complex")?;
    let n = a.rows();
    let eig = cm_eigen(&a.psi_big())?;
    let frame = e_frame(n);
    let mut out = Vec::with_capacity(2 * n);
    for (k, &value) in eig.values.iter().enumerate() {
        let y = BqMatrix::from_complex(&CMatrix::new(2 * n, 1, eig.vector(k))?);
        let vector = frame.matmul(&y)?;
        let residual = right_residual(a, &vector, Biquaternion::complex(value))?;
        out.push(EigenPair {
            value,
            vector,
            residual,
        });
    }
    Ok(out)
}

fn unit_pair_sigma_min(y1: &[C64], y2: &[C64]) -> f64 {
    let m = CMatrix::from_columns(y1.len(), &[y1.to_vec(), y2.to_vec()]).expect("equal heights");
    cm_svd(&m).s.last().copied().unwrap_or(0.0)
}

fn lift(a: &BqMatrix, cols: [Vec<C64>; 2], value_rep: CMatrix) -> Result<RegularEigenPair> {
    let h = cols[0].len();
    let x = BqMatrix::from_psi_big(&CMatrix::from_columns(h, &cols)?)?;
    let value = Biquaternion::from_psi(&value_rep)?;
    if x.rank().twice_rank != 2 {
        return Err(Error::RankDeficientLift);
    }
    let residual = right_residual(a, &x, value)?;
    Ok(RegularEigenPair {
        value,
        vector: x,
        residual,
    })
}

/// A regular right eigenpair.
///
/// When `Ψ(A)` has two independent eigenvectors `Y1, Y2` the eigenvector is the
/// unique `X` with `Ψ(X) = [Y1 Y2]` and `λ` satisfies `ψ(λ) = diag(λ1, λ2)`. The
/// best-conditioned pair (largest smallest singular value) is used. Otherwise
/// `Ψ(A)` is a single Jordan block and a chain `Y1, Y2` gives
/// `ψ(λ) = [[λ1, 1], [0, λ1]]`.
pub fn regular_right_eigen(a: &BqMatrix) -> Result<RegularEigenPair> {
    require_square(a, "regular_right_eigen")?;
    if a.rows() == 0 {
        return Err(Error::NotSquare {
            op: "regular_right_eigen",
            rows: 0,
            cols: 0,
        });
    }
    let psi = a.psi_big();
    let eig = cm_eigen(&psi)?;
    let m = eig.values.len();
    let vecs: Vec<Vec<C64>> = (0..m).map(|k| eig.vector(k)).collect();

    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            candidates.push((unit_pair_sigma_min(&vecs[i], &vecs[j]), i, j));
        }
    }
    candidates.sort_by(|x, y| y.0.total_cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));

    let tol = 1e-9 * a.norm().max(1.0);
    for &(sigma, i, j) in candidates.iter().filter(|c| c.0 > INDEPENDENCE_TOL) {
        let _ = sigma;
        // larger imaginary part first, then larger real part
        let (p, q) = if (eig.values[i].im, eig.values[i].re) >= (eig.values[j].im, eig.values[j].re)
        {
            (i, j)
        } else {
            (j, i)
        };
        let rep = CMatrix::diag(&[eig.values[p], eig.values[q]]);
        if let Ok(pair) = lift(a, [vecs[p].clone(), vecs[q].clone()], rep) {
            if pair.residual <= tol {
                return Ok(pair);
            }
        }
    }

    // single eigenvector: follow the Jordan chain of the (only) eigenvalue
    let lambda1: C64 = eig.values.iter().sum::<C64>() / m as f64;
    let shifted = psi.shifted(lambda1);
    let svd = cm_svd(&shifted);
    let mut y1 = svd.v.column(m - 1);
    crate::complex_linalg::normalize_vector(&mut y1);
    let y1_col = CMatrix::new(m, 1, y1.clone())?;
    let y2 = (&cm_pinv(&shifted, DEFAULT_RANK_TOL) * &y1_col).column(0);
    let rep = CMatrix::from_rows(&[vec![lambda1, C64::ONE], vec![C64::ZERO, lambda1]])?;
    match lift(a, [y1, y2], rep) {
        Ok(pair) if pair.residual <= tol => Ok(pair),
        _ => {
            // fall back on the best available pair even if poorly separated
            for &(_, i, j) in &candidates {
                let rep = CMatrix::diag(&[eig.values[i], eig.values[j]]);
                if let Ok(pair) = lift(a, [vecs[i].clone(), vecs[j].clone()], rep) {
                    if pair.residual <= tol {
                        return Ok(pair);
                    }
                }
            }
            Err(Error::RankDeficientLift)
        }
    }
}

/// Complex eigenvalues of `Ψ(A)` recovered from a regular right eigenpair.
///
/// A complex `λ` is itself the eigenvalue. Otherwise `λ = p c p⁻¹` with `c` its
/// canonical form, `A (X p) = (X p) c`, and the eigenvalues are those of `ψ(c)`:
/// `λ0 ± τ(λ) i` in the generic case, `λ0` in the null case. Distinct values are
/// returned.
pub fn eigen_from_regular(a: &BqMatrix, pair: &RegularEigenPair) -> Result<Vec<C64>> {
    require_square(a, "eigen_from_regular")?;
    let residual = right_residual(a, &pair.vector, pair.value)?;
    let tol = PAIR_RESIDUAL_TOL * a.norm().max(1.0) * pair.vector.norm().max(1.0);
    if residual > tol {
        return Err(Error::InvalidPair { residual, tol });
    }
    let lambda = pair.value;
    let (form, case) = lambda.canonical_form();
    if case == CanonicalCase::Complex {
        return Ok(vec![lambda.a0]);
    }
    let p = lambda.similarity_witness()?;
    let xp = pair.vector.scale_right(p);
    let transformed = right_residual(a, &xp, form)?;
    let tol = PAIR_RESIDUAL_TOL * a.norm().max(1.0) * xp.norm().max(1.0);
    if transformed > tol {
        return Err(Error::InvalidPair {
            residual: transformed,
            tol,
        });
    }
    let i = C64::new(0.0, 1.0);
    Ok(match case {
        CanonicalCase::Generic => vec![form.a0 + form.a1 * i, form.a0 - form.a1 * i],
        _ => vec![form.a0],
    })
}

/// Fingerprints of both representations and the similarity verdict.
#[derive(Clone, Debug)]
pub struct SimilarityReport {
    pub similar: bool,
    pub left: JordanFingerprint,
    pub right: JordanFingerprint,
}

pub fn similarity_report(a: &BqMatrix, b: &BqMatrix, tol: &JordanTol) -> Result<SimilarityReport> {
    require_square(a, "similar")?;
    require_square(b, "similar")?;
    if a.shape() != b.shape() {
        return Err(Error::dims("similar", a.shape(), b.shape()));
    }
    let left = cm_jordan_fingerprint(&a.psi_big(), tol)?;
    let right = cm_jordan_fingerprint(&b.psi_big(), tol)?;
    Ok(SimilarityReport {
        similar: left.matches(&right, PAIRING_REL_TOL),
        left,
        right,
    })
}

/// Similarity over the biquaternions, decided by comparing Jordan structures of `Ψ`.
pub fn similar(a: &BqMatrix, b: &BqMatrix) -> Result<bool> {
    Ok(similarity_report(a, b, &JordanTol::default())?.similar)
}

/// Verdict and the fingerprint of `ψ(A)` it was read from.
#[derive(Clone, Debug)]
pub struct DiagonalizabilityReport {
    pub diagonalizable: bool,
    pub fingerprint: JordanFingerprint,
}

pub fn diagonalizability_report(a: &BqMatrix, tol: &JordanTol) -> Result<DiagonalizabilityReport> {
    require_square(a, "diagonalizable_over_q")?;
    let fingerprint = cm_jordan_fingerprint(&a.psi_small(), tol)?;
    // nullity of (ψ(A) - λ)^2 equals the multiplicity iff no block exceeds 2
    let diagonalizable = fingerprint.clusters.iter().all(|c| {
        let n2 = c.weyr.get(1).or(c.weyr.first()).copied().unwrap_or(0);
        n2 >= c.multiplicity
    });
    Ok(DiagonalizabilityReport {
        diagonalizable,
        fingerprint,
    })
}

/// True iff `A` is similar to a diagonal biquaternion matrix, i.e. every Jordan
/// block of `ψ(A)` has size at most 2.
pub fn diagonalizable_over_q(a: &BqMatrix) -> Result<bool> {
    Ok(diagonalizability_report(a, &JordanTol::default())?.diagonalizable)
}

/// Whether `A` is similar to a complex matrix, with a complex Jordan form `J` such
/// that `Ψ(A) ~ diag(J, J)` when it is.
pub fn similar_to_complex(a: &BqMatrix) -> Result<(bool, Option<CMatrix>)> {
    similar_to_complex_with_tol(a, &JordanTol::default())
}

pub fn similar_to_complex_with_tol(
    a: &BqMatrix,
    tol: &JordanTol,
) -> Result<(bool, Option<CMatrix>)> {
    require_square(a, "similar_to_complex")?;
    let n = a.rows();
    let fp = cm_jordan_fingerprint(&a.psi_big(), tol)?;
    let mut blocks: Vec<(C64, usize)> = Vec::new();
    for cluster in &fp.clusters {
        let sizes = cluster.block_sizes();
        if sizes.iter().sum::<usize>() != cluster.multiplicity {
            return Ok((false, None));
        }
        let mut k = 0;
        while k < sizes.len() {
            let run = sizes[k..].iter().take_while(|&&s| s == sizes[k]).count();
            if run % 2 != 0 {
                return Ok((false, None));
            }
            for _ in 0..run / 2 {
                blocks.push((cluster.eigenvalue, sizes[k]));
            }
            k += run;
        }
    }
    let mut j = CMatrix::zeros(n, n);
    let mut at = 0;
    for (value, size) in blocks {
        for d in 0..size {
            j[(at + d, at + d)] = value;
            if d + 1 < size {
                j[(at + d, at + d + 1)] = C64::ONE;
            }
        }
        at += size;
    }
    debug_assert_eq!(at, n);
    Ok((true, Some(j)))
}

/// True when the eigenvalue is complex within the componentwise tolerance.
pub fn is_complex_eigenvalue(lambda: &Biquaternion) -> bool {
    lambda.is_complex(COMPONENT_TOL * (1.0 + lambda.magnitude()))
}
