//! Matrices over the complex quaternions, their complex representations, and the
//! inverse, pseudoinverse and rank obtained through them.
//!
//! Storage is structure-of-arrays: `A = A0 + A1 e1 + A2 e2 + A3 e3` with four complex
//! component matrices, so building `Ψ(A)` is a handful of block copies.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::complex_linalg::{cm_pinv, cm_svd, CMatrix, C64, DEFAULT_RANK_TOL};
use crate::error::{Error, Result};
use crate::scalar::Biquaternion;

const I: C64 = C64::new(0.0, 1.0);

/// Dense `rows x cols` biquaternion matrix.
#[derive(Clone, PartialEq)]
pub struct BqMatrix {
    comps: [CMatrix; 4],
}

/// Rank as an exact half-integer: `rank(A) = rank(Ψ(A)) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfRank {
    pub twice_rank: usize,
}

impl HalfRank {
    pub fn is_integer(&self) -> bool {
        self.twice_rank % 2 == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.twice_rank as f64 / 2.0
    }
}

impl fmt::Display for HalfRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_rank / 2)
        } else {
            write!(f, "{}/2", self.twice_rank)
        }
    }
}

impl BqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let z = CMatrix::zeros(rows, cols);
        BqMatrix {
            comps: [z.clone(), z.clone(), z.clone(), z],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.comps[0] = CMatrix::identity(n);
        m
    }

    /// Builds from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Biquaternion>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadLength {
                op: "BqMatrix::new",
                len: entries.len(),
                expected: rows * cols,
            });
        }
        let comps = std::array::from_fn(|k| {
            CMatrix::new(
                rows,
                cols,
                entries.iter().map(|q| q.components()[k]).collect(),
            )
        });
        let [a0, a1, a2, a3] = comps;
        Ok(BqMatrix {
            comps: [a0?, a1?, a2?, a3?],
        })
    }

    /// Builds from the component matrices `A0..A3`, which must share a shape.
    pub fn from_components(a0: CMatrix, a1: CMatrix, a2: CMatrix, a3: CMatrix) -> Result<Self> {
        for m in [&a1, &a2, &a3] {
            if m.shape() != a0.shape() {
                return Err(Error::dims(
                    "BqMatrix::from_components",
                    a0.shape(),
                    m.shape(),
                ));
            }
        }
        Ok(BqMatrix {
            comps: [a0, a1, a2, a3],
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Biquaternion,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Embeds a complex matrix (all e-parts zero).
    pub fn from_complex(m: &CMatrix) -> Self {
        let z = CMatrix::zeros(m.rows(), m.cols());
        BqMatrix {
            comps: [m.clone(), z.clone(), z.clone(), z],
        }
    }

    pub fn diag(values: &[Biquaternion]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                values[i]
            } else {
                Biquaternion::ZERO
            }
        })
    }

    /// A single column from its entries.
    pub fn column_vector(entries: &[Biquaternion]) -> Self {
        Self::from_fn(entries.len(), 1, |i, _| entries[i])
    }

    pub fn rows(&self) -> usize {
        self.comps[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.comps[0].cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.comps[0].shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// Component matrix `A_k`, `k ∈ 0..4`.
    pub fn component(&self, k: usize) -> &CMatrix {
        &self.comps[k]
    }

    pub fn get(&self, i: usize, j: usize) -> Biquaternion {
        Biquaternion::new(
            self.comps[0][(i, j)],
            self.comps[1][(i, j)],
            self.comps[2][(i, j)],
            self.comps[3][(i, j)],
        )
    }

    pub fn set(&mut self, i: usize, j: usize, q: Biquaternion) {
        for (k, c) in q.components().into_iter().enumerate() {
            self.comps[k][(i, j)] = c;
        }
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<Biquaternion> {
        let (r, c) = self.shape();
        (0..r)
            .flat_map(|i| (0..c).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect()
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        BqMatrix {
            comps: std::array::from_fn(|k| self.comps[k].block(r0, c0, rows, cols)),
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &BqMatrix) {
        for k in 0..4 {
            self.comps[k].set_block(r0, c0, &b.comps[k]);
        }
    }

    /// Matrix product in biquaternion arithmetic.
    pub fn matmul(&self, rhs: &BqMatrix) -> Result<BqMatrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::dims("bqm_mul", self.shape(), rhs.shape()));
        }
        let (m, n, p) = (self.rows(), self.cols(), rhs.cols());
        let lhs = self.entries();
        let rhs_e = rhs.entries();
        let mut out = BqMatrix::zeros(m, p);
        for i in 0..m {
            for j in 0..p {
                let s: Biquaternion = (0..n).map(|k| lhs[i * n + k] * rhs_e[k * p + j]).sum();
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &BqMatrix) -> Result<BqMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims("bqm_add", self.shape(), rhs.shape()));
        }
        Ok(BqMatrix {
            comps: std::array::from_fn(|k| &self.comps[k] + &rhs.comps[k]),
        })
    }

    pub fn try_sub(&self, rhs: &BqMatrix) -> Result<BqMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims("bqm_sub", self.shape(), rhs.shape()));
        }
        Ok(BqMatrix {
            comps: std::array::from_fn(|k| &self.comps[k] - &rhs.comps[k]),
        })
    }

    /// `q · A` (entrywise left multiplication).
    pub fn scale_left(&self, q: Biquaternion) -> BqMatrix {
        let (r, c) = self.shape();
        Self::from_fn(r, c, |i, j| q * self.get(i, j))
    }

    /// `A · q` (entrywise right multiplication).
    pub fn scale_right(&self, q: Biquaternion) -> BqMatrix {
        let (r, c) = self.shape();
        Self::from_fn(r, c, |i, j| self.get(i, j) * q)
    }

    /// Multiplication by a complex scalar, which commutes with everything.
    pub fn scale_complex(&self, s: C64) -> BqMatrix {
        BqMatrix {
            comps: std::array::from_fn(|k| self.comps[k].scale(s)),
        }
    }

    /// Transpose with entrywise dual.
    pub fn dual(&self) -> BqMatrix {
        let (r, c) = self.shape();
        Self::from_fn(c, r, |i, j| self.get(j, i).dual())
    }

    /// Transpose with entrywise Hermitian conjugate.
    pub fn hconj(&self) -> BqMatrix {
        let (r, c) = self.shape();
        Self::from_fn(c, r, |i, j| self.get(j, i).hconj())
    }

    /// Entrywise complex conjugate, no transpose.
    pub fn cconj(&self) -> BqMatrix {
        BqMatrix {
            comps: std::array::from_fn(|k| self.comps[k].conj()),
        }
    }

    /// The block complex representation `Ψ(A)` of size `2m x 2n`:
    /// `[[A0 + A1 i, -(A2 + A3 i)], [A2 - A3 i, A0 - A1 i]]`.
    pub fn psi_big(&self) -> CMatrix {
        let (m, n) = self.shape();
        let [a0, a1, a2, a3] = &self.comps;
        let mut out = CMatrix::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                let (x0, x1, x2, x3) = (a0[(i, j)], a1[(i, j)], a2[(i, j)], a3[(i, j)]);
                out[(i, j)] = x0 + x1 * I;
                out[(i, n + j)] = -(x2 + x3 * I);
                out[(m + i, j)] = x2 - x3 * I;
                out[(m + i, n + j)] = x0 - x1 * I;
            }
        }
        out
    }

    /// The unique `A` with `Ψ(A) = M`, for any `M` of even shape.
    pub fn from_psi_big(mm: &CMatrix) -> Result<BqMatrix> {
        let (r, c) = mm.shape();
        if r % 2 != 0 || c % 2 != 0 {
            return Err(Error::OddDimension {
                op: "bqm_from_Psi",
                rows: r,
                cols: c,
            });
        }
        let (m, n) = (r / 2, c / 2);
        let m11 = mm.block(0, 0, m, n);
        let m12 = mm.block(0, n, m, n);
        let m21 = mm.block(m, 0, m, n);
        let m22 = mm.block(m, n, m, n);
        let half = C64::new(0.5, 0.0);
        BqMatrix::from_components(
            (&m11 + &m22).scale(half),
            (&m22 - &m11).scale(half * I),
            (&m21 - &m12).scale(half),
            (&m12 + &m21).scale(half * I),
        )
    }

    /// The entrywise complex representation `ψ(A)`: the block matrix of `ψ(a_st)`.
    pub fn psi_small(&self) -> CMatrix {
        let (m, n) = self.shape();
        let mut out = CMatrix::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                out.set_block(2 * i, 2 * j, &self.get(i, j).psi());
            }
        }
        out
    }

    /// The unique `A` with `ψ(A) = M`.
    pub fn from_psi_small(mm: &CMatrix) -> Result<BqMatrix> {
        let (r, c) = mm.shape();
        if r % 2 != 0 || c % 2 != 0 {
            return Err(Error::OddDimension {
                op: "bqm_from_psi",
                rows: r,
                cols: c,
            });
        }
        let mut out = BqMatrix::zeros(r / 2, c / 2);
        for i in 0..r / 2 {
            for j in 0..c / 2 {
                out.set(i, j, Biquaternion::from_psi(&mm.block(2 * i, 2 * j, 2, 2))?);
            }
        }
        Ok(out)
    }

    /// Frobenius norm of `Ψ(A)`, computed from the components.
    pub fn norm(&self) -> f64 {
        // |x + iy|² + |x - iy|² = 2(|x|² + |y|²) blockwise
        (2.0 * self
            .comps
            .iter()
            .map(|c| c.data().iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum::<f64>())
        .sqrt()
    }

    /// Largest componentwise distance; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &BqMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        (0..4)
            .map(|k| self.comps[k].max_abs_diff(&other.comps[k]))
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &BqMatrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Inverse through `Ψ(A)⁻¹`; fails when `Ψ(A)` is numerically singular.
    pub fn inverse(&self) -> Result<BqMatrix> {
        self.inverse_with_tol(DEFAULT_RANK_TOL)
    }

    pub fn inverse_with_tol(&self, tol: f64) -> Result<BqMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "bqm_inverse",
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let psi = self.psi_big();
        let svd = cm_svd(&psi);
        let n2 = psi.rows();
        let smin = svd.s.last().copied().unwrap_or(1.0);
        let smax = svd.s.first().copied().unwrap_or(1.0);
        if n2 > 0 && (smax == 0.0 || smin <= tol * smax) {
            return Err(Error::NotInvertible { op: "bqm_inverse" });
        }
        BqMatrix::from_psi_big(&cm_pinv(&psi, tol))
    }

    /// Moore-Penrose inverse: `Ψ(A⁺) = Ψ(A)⁺`.
    pub fn pinv(&self) -> BqMatrix {
        self.pinv_with_tol(DEFAULT_RANK_TOL)
    }

    pub fn pinv_with_tol(&self, tol: f64) -> BqMatrix {
        BqMatrix::from_psi_big(&cm_pinv(&self.psi_big(), tol)).expect("even shape")
    }

    pub fn rank(&self) -> HalfRank {
        self.rank_with_tol(DEFAULT_RANK_TOL)
    }

    pub fn rank_with_tol(&self, tol: f64) -> HalfRank {
        HalfRank {
            twice_rank: crate::complex_linalg::cm_rank(&self.psi_big(), tol),
        }
    }

    fn require_square(&self, op: &'static str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows(),
                cols: self.cols(),
            })
        }
    }

    /// `A† = A` within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        self.require_square("bqm_is_hermitian")?;
        Ok(self.hconj().approx_eq(self, tol))
    }

    /// `A A† = A† A = I` within `tol`.
    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        self.require_square("bqm_is_unitary")?;
        let h = self.hconj();
        let id = BqMatrix::identity(self.rows());
        Ok(self.matmul(&h)?.approx_eq(&id, tol) && h.matmul(self)?.approx_eq(&id, tol))
    }
}

/// Largest residual (norm of `Ψ` of the difference) of the four Penrose equations
/// `AXA = A`, `XAX = X`, `(AX)† = AX`, `(XA)† = XA`, evaluated in biquaternion arithmetic.
pub fn penrose_residual(a: &BqMatrix, x: &BqMatrix) -> Result<f64> {
    let ax = a.matmul(x)?;
    let xa = x.matmul(a)?;
    let r1 = ax.matmul(a)?.try_sub(a)?.norm();
    let r2 = xa.matmul(x)?.try_sub(x)?.norm();
    let r3 = ax.hconj().try_sub(&ax)?.norm();
    let r4 = xa.hconj().try_sub(&xa)?.norm();
    Ok(r1.max(r2).max(r3).max(r4))
}

/// The `t x 2t` frame `E_{2t} = [(1 - i e1) I_t, (e2 + i e3) I_t]`.
pub fn e_frame(t: usize) -> BqMatrix {
    let left = Biquaternion::new(C64::ONE, -I, C64::ZERO, C64::ZERO);
    let right = Biquaternion::new(C64::ZERO, C64::ZERO, C64::ONE, I);
    BqMatrix::from_fn(t, 2 * t, |i, j| {
        if j == i {
            left
        } else if j == t + i {
            right
        } else {
            Biquaternion::ZERO
        }
    })
}

/// The self-inverse unitary `2t x 2t` matrix
/// `½[[(1 - i e1) I, (e2 + i e3) I], [(-e2 + i e3) I, (1 + i e1) I]]` realizing
/// `Q diag(A, A) Q = Ψ(A)`.
pub fn q_frame(t: usize) -> BqMatrix {
    let h = C64::new(0.5, 0.0);
    let q11 = Biquaternion::new(C64::ONE, -I, C64::ZERO, C64::ZERO).scale(h);
    let q12 = Biquaternion::new(C64::ZERO, C64::ZERO, C64::ONE, I).scale(h);
    let q21 = Biquaternion::new(C64::ZERO, C64::ZERO, -C64::ONE, I).scale(h);
    let q22 = Biquaternion::new(C64::ONE, I, C64::ZERO, C64::ZERO).scale(h);
    BqMatrix::from_fn(2 * t, 2 * t, |i, j| {
        let (bi, ri) = (i / t, i % t);
        let (bj, rj) = (j / t, j % t);
        if ri != rj {
            return Biquaternion::ZERO;
        }
        match (bi, bj) {
            (0, 0) => q11,
            (0, 1) => q12,
            (1, 0) => q21,
            _ => q22,
        }
    })
}

/// Recovers `A` from `M = Ψ(A)` as `¼ E_{2m} M E_{2n}†`, entirely in biquaternion
/// arithmetic.
pub fn reconstruct(mm: &CMatrix) -> Result<BqMatrix> {
    let (r, c) = mm.shape();
    if r % 2 != 0 || c % 2 != 0 {
        return Err(Error::OddDimension {
            op: "bqm_reconstruct",
            rows: r,
            cols: c,
        });
    }
    let em = e_frame(r / 2);
    let en = e_frame(c / 2);
    let lifted = BqMatrix::from_complex(mm);
    Ok(em
        .matmul(&lifted)?
        .matmul(&en.hconj())?
        .scale_complex(C64::new(0.25, 0.0)))
}

/// Moore-Penrose inverse through the frame formula `¼ E_{2n} Ψ(A)⁺ E_{2m}†`.
pub fn pinv_via_frames(a: &BqMatrix, tol: f64) -> BqMatrix {
    let (m, n) = a.shape();
    let y = BqMatrix::from_complex(&cm_pinv(&a.psi_big(), tol));
    e_frame(n)
        .matmul(&y)
        .and_then(|x| x.matmul(&e_frame(m).hconj()))
        .expect("frame shapes agree")
        .scale_complex(C64::new(0.25, 0.0))
}

/// Permutation matrices `(G, H)` with `G Ψ(A) H = ψ(A)` for every `m x n` matrix `A`.
///
/// `G` interleaves row `s` of the top half with row `s` of the bottom half; `H`
/// does the same for columns.
pub fn shuffle_perms(m: usize, n: usize) -> (CMatrix, CMatrix) {
    let mut g = CMatrix::zeros(2 * m, 2 * m);
    for s in 0..m {
        for r in 0..2 {
            g[(2 * s + r, r * m + s)] = C64::ONE;
        }
    }
    let mut h = CMatrix::zeros(2 * n, 2 * n);
    for t in 0..n {
        for c in 0..2 {
            h[(c * n + t, 2 * t + c)] = C64::ONE;
        }
    }
    (g, h)
}

impl Mul for &BqMatrix {
    type Output = BqMatrix;

    fn mul(self, rhs: &BqMatrix) -> BqMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &BqMatrix {
    type Output = BqMatrix;

    fn add(self, rhs: &BqMatrix) -> BqMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &BqMatrix {
    type Output = BqMatrix;

    fn sub(self, rhs: &BqMatrix) -> BqMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &BqMatrix {
    type Output = BqMatrix;

    fn neg(self) -> BqMatrix {
        self.scale_complex(-C64::ONE)
    }
}

impl fmt::Debug for BqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BqMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                writeln!(f, "  [{i},{j}] {}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
