//! Randomized end-to-end check of every algebraic law the library relies on.

use std::fmt::Write as _;

use crate::complex_linalg::{
    cm_charpoly, cm_det, cm_eigen, cm_pinv, cm_svd, penrose_residual as cm_penrose, CMatrix, C64,
    DEFAULT_RANK_TOL,
};
use crate::det::{cayley_hamilton, central_det, scalar_scaling_law_probe, triangular_central_det};
use crate::error::Result;
use crate::matrix::{e_frame, penrose_residual, q_frame, reconstruct, shuffle_perms, BqMatrix};
use crate::sample::Sampler;
use crate::scalar::Biquaternion;
use crate::spectral::{
    adjoint_vector, diagonalizable_over_q, eigen_from_regular, regular_right_eigen,
    right_eigen_complex, similar,
};

/// Outcome of one law over all of its samples.
#[derive(Clone, Debug, PartialEq)]
pub struct LawResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub size: usize,
    pub laws: Vec<LawResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "seed {} trials {} size {}",
            self.seed, self.trials, self.size
        );
        let _ = writeln!(
            out,
            "{:<34} {:>7} {:>12} {:>9}  result",
            "law", "samples", "max_resid", "tol"
        );
        for l in &self.laws {
            let _ = writeln!(
                out,
                "{:<34} {:>7} {:>12.3e} {:>9.1e}  {}",
                l.name,
                l.samples,
                l.max_residual,
                l.tolerance,
                if l.passed { "PASS" } else { "FAIL" }
            );
        }
        let failed = self.laws.iter().filter(|l| !l.passed).count();
        let _ = writeln!(out, "{} laws, {} failed", self.laws.len(), failed);
        out
    }
}

struct Runner {
    seed: u64,
    trials: usize,
    laws: Vec<LawResult>,
}

impl Runner {
    fn law(
        &mut self,
        name: &'static str,
        tolerance: f64,
        mut f: impl FnMut(&mut Sampler) -> Result<f64>,
    ) {
        let stream = self.seed ^ (self.laws.len() as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut s = Sampler::new(stream);
        let mut max_residual = 0.0f64;
        for _ in 0..self.trials {
            let r = match f(&mut s) {
                Ok(r) if !r.is_nan() => r,
                _ => f64::INFINITY,
            };
            max_residual = max_residual.max(r);
        }
        self.laws.push(LawResult {
            name,
            samples: self.trials,
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
        });
    }
}

fn rel(x: C64, y: C64) -> f64 {
    let d = (x - y).norm();
    if d == 0.0 {
        0.0
    } else {
        d / x.norm().max(y.norm()).max(f64::MIN_POSITIVE)
    }
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn int_complex(s: &mut Sampler, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| s.int_scalar().a0)
}

fn disk_complex(s: &mut Sampler, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| s.disk())
}

fn conjugate(a: &BqMatrix, p: &BqMatrix) -> Result<BqMatrix> {
    p.inverse()?.matmul(a)?.matmul(p)
}

/// Runs every law on `trials` samples of (at most) `size × size` matrices.
pub fn verify_suite(seed: u64, trials: usize, size: usize) -> VerifyReport {
    let trials = trials.max(1);
    let n = size.max(1);
    let mut r = Runner {
        seed,
        trials,
        laws: Vec::new(),
    };

    // complex engine
    r.law("cm_det_multiplicative", 1e-10, |s| {
        let a = int_complex(s, n, n);
        let b = int_complex(s, n, n);
        Ok(rel(cm_det(&(&a * &b))?, cm_det(&a)? * cm_det(&b)?))
    });
    r.law("cm_svd_reconstruction", 1e-12, |s| {
        let a = disk_complex(s, 2 * n, n + 1);
        Ok(cm_svd(&a).reconstruct().max_abs_diff(&a) / a.frobenius_norm().max(1e-300))
    });
    r.law("cm_pinv_penrose", 1e-10, |s| {
        let a = &disk_complex(s, 2 * n, 1) * &disk_complex(s, 1, n + 1);
        let x = cm_pinv(&a, DEFAULT_RANK_TOL);
        Ok(cm_penrose(&a, &x)? / a.frobenius_norm().max(1.0))
    });
    r.law("cm_eigen_residual", 1e-9, |s| {
        let a = disk_complex(s, 2 * n, 2 * n);
        let e = cm_eigen(&a)?;
        Ok(crate::complex_linalg::eigen_residual(&a, &e) / a.frobenius_norm().max(1.0))
    });
    r.law("cm_charpoly_at_eigenvalues", 1e-8, |s| {
        let a = disk_complex(s, 2 * n, 2 * n);
        let p = cm_charpoly(&a)?;
        let e = cm_eigen(&a)?;
        Ok(e.values
            .iter()
            .map(|&l| p.eval(l).norm() / p.magnitude_at(l.norm()).max(1.0))
            .fold(0.0, f64::max))
    });

    // scalars
    r.law("scalar_homomorphism", 0.0, |s| {
        let (a, b) = (s.int_scalar(), s.int_scalar());
        let m = (a * b).psi().max_abs_diff(&(&a.psi() * &b.psi()));
        Ok(m.max((a + b).psi().max_abs_diff(&(&a.psi() + &b.psi()))))
    });
    r.law("scalar_det_is_weak_norm", 0.0, |s| {
        let a = s.int_scalar();
        Ok((cm_det(&a.psi())? - a.weak_norm()).norm())
    });
    r.law("scalar_representation_round_trip", 0.0, |s| {
        let a = s.int_scalar();
        let m = int_complex(s, 2, 2);
        let back = Biquaternion::from_psi(&a.psi())?.max_abs_diff(&a);
        Ok(back.max(Biquaternion::from_psi(&m)?.psi().max_abs_diff(&m)))
    });
    r.law("scalar_frame_reconstruction", 0.0, |s| {
        let a = s.int_scalar();
        Ok(reconstruct(&a.psi())?.get(0, 0).max_abs_diff(&a))
    });
    r.law("scalar_conjugation_laws", 0.0, |s| {
        let (a, b) = (s.int_scalar(), s.int_scalar());
        let ab = a * b;
        let checks = [
            a.dual().dual().max_abs_diff(&a),
            a.cconj().cconj().max_abs_diff(&a),
            a.hconj().hconj().max_abs_diff(&a),
            (a + b).dual().max_abs_diff(&(a.dual() + b.dual())),
            (a + b).hconj().max_abs_diff(&(a.hconj() + b.hconj())),
            ab.dual().max_abs_diff(&(b.dual() * a.dual())),
            ab.cconj().max_abs_diff(&(a.cconj() * b.cconj())),
            ab.hconj().max_abs_diff(&(b.hconj() * a.hconj())),
            (a * a.dual()).max_abs_diff(&Biquaternion::complex(a.weak_norm())),
        ];
        Ok(checks.into_iter().fold(0.0, f64::max))
    });
    r.law("scalar_hconj_representation", 0.0, |s| {
        let a = s.int_scalar();
        Ok(a.hconj().psi().max_abs_diff(&a.psi().adjoint()))
    });
    r.law("scalar_pinv_penrose", 1e-10, |s| {
        let a = if s.usize_in(0, 1) == 0 {
            s.disk_scalar()
        } else {
            s.zero_divisor()
        };
        let am = BqMatrix::diag(&[a]);
        penrose_residual(&am, &BqMatrix::diag(&[a.pinv()]))
    });
    r.law("scalar_canonical_similarity", 1e-8, |s| {
        let a = s.disk_scalar();
        let (form, _) = a.canonical_form();
        let p = a.similarity_witness()?;
        Ok((p.inverse()? * a * p).max_abs_diff(&form) / (1.0 + a.magnitude()))
    });

    // matrices
    let (rows, cols) = (n, n + 1);
    r.law("matrix_universal_factorization", 0.0, |s| {
        let a = s.int_matrix(rows, cols);
        let mut d = BqMatrix::zeros(2 * rows, 2 * cols);
        d.set_block(0, 0, &a);
        d.set_block(rows, cols, &a);
        let lhs = q_frame(rows).matmul(&d)?.matmul(&q_frame(cols))?;
        Ok(lhs.max_abs_diff(&BqMatrix::from_complex(&a.psi_big())))
    });
    r.law("matrix_q_self_inverse_unitary", 0.0, |_| {
        let q = q_frame(n);
        let id = BqMatrix::identity(2 * n);
        Ok(q.matmul(&q)?
            .max_abs_diff(&id)
            .max(q.matmul(&q.hconj())?.max_abs_diff(&id)))
    });
    r.law("matrix_frame_reconstruction", 0.0, |s| {
        let a = s.int_matrix(rows, cols);
        Ok(reconstruct(&a.psi_big())?.max_abs_diff(&a))
    });
    r.law("matrix_frame_commutation", 0.0, |s| {
        let a = s.int_matrix(rows, cols);
        let big = BqMatrix::from_complex(&a.psi_big());
        let (em, en) = (e_frame(rows), e_frame(cols));
        let lhs = big.matmul(&en.hconj())?.matmul(&en)?;
        let rhs = em.hconj().matmul(&em)?.matmul(&big)?;
        Ok(lhs.max_abs_diff(&rhs))
    });
    r.law("matrix_homomorphism", 0.0, |s| {
        let a = s.int_matrix(rows, cols);
        let b = s.int_matrix(cols, rows);
        let ab = a.matmul(&b)?;
        let big = ab.psi_big().max_abs_diff(&(&a.psi_big() * &b.psi_big()));
        let small = ab
            .psi_small()
            .max_abs_diff(&(&a.psi_small() * &b.psi_small()));
        Ok(big.max(small))
    });
    r.law("matrix_hconj_representation", 0.0, |s| {
        let a = s.int_matrix(rows, cols);
        Ok(a.hconj().psi_big().max_abs_diff(&a.psi_big().adjoint()))
    });
    r.law("matrix_permutation_equivalence", 0.0, |s| {
        let a = s.int_matrix(rows, cols);
        let (g, h) = shuffle_perms(rows, cols);
        Ok((&(&g * &a.psi_big()) * &h).max_abs_diff(&a.psi_small()))
    });
    r.law("matrix_pinv_penrose", 1e-10, |s| {
        let inner = s.usize_in(1, n);
        let a = s.low_rank_matrix(rows, cols, inner);
        Ok(penrose_residual(&a, &a.pinv())? / a.norm().max(1.0))
    });
    r.law("matrix_pinv_representation", 1e-10, |s| {
        let a = {
            let k = s.usize_in(1, n);
            s.low_rank_matrix(rows, cols, k)
        };
        let lhs = a.pinv().psi_big();
        let rhs = cm_pinv(&a.psi_big(), DEFAULT_RANK_TOL);
        Ok(lhs.max_abs_diff(&rhs) / rhs.frobenius_norm().max(1.0))
    });
    r.law("matrix_pinv_uniqueness", 0.0, |s| {
        let a = s.disk_matrix(rows, cols);
        let x = a.pinv();
        let perturbed = x.try_add(&s.disk_matrix(cols, rows).scale_complex(C64::new(1e-6, 0.0)))?;
        Ok(flag(penrose_residual(&a, &perturbed)? > 1e-12))
    });
    r.law("rank_subadditivity", 0.0, |s| {
        let a = {
            let k = s.usize_in(1, n);
            s.low_rank_matrix(n, n, k)
        };
        let b = if s.usize_in(0, 1) == 0 {
            BqMatrix::diag(&(0..n).map(|_| s.zero_divisor()).collect::<Vec<_>>())
        } else {
            {
                let k = s.usize_in(1, n);
                s.low_rank_matrix(n, n, k)
            }
        };
        let ab = a.matmul(&b)?.rank();
        Ok(flag(ab <= a.rank().min(b.rank())))
    });

    // spectral
    r.law("adjoint_vector_identities", 0.0, |s| {
        let a = s.int_matrix(rows, cols);
        let x = s.int_matrix(cols, 1);
        let lambda = s.int_scalar().a0;
        let ax = adjoint_vector(&a.matmul(&x)?)?.as_column();
        let rhs = &a.psi_big() * &adjoint_vector(&x)?.as_column();
        let xl = adjoint_vector(&x.scale_complex(lambda))?.as_column();
        Ok(ax
            .max_abs_diff(&rhs)
            .max(xl.max_abs_diff(&adjoint_vector(&x)?.as_column().scale(lambda))))
    });
    r.law("right_eigenpair_residual", 1e-9, |s| {
        let a = s.disk_matrix(n, n);
        let pairs = right_eigen_complex(&a)?;
        Ok(pairs.iter().map(|p| p.residual).fold(0.0, f64::max) / a.norm().max(1.0))
    });
    r.law("regular_eigenpair_residual", 1e-9, |s| {
        let a = s.disk_matrix(n, n);
        let pair = regular_right_eigen(&a)?;
        let rank_ok = pair.vector.rank().twice_rank == 2;
        Ok(if rank_ok {
            pair.residual / a.norm().max(1.0)
        } else {
            f64::INFINITY
        })
    });
    r.law("regular_eigen_round_trip", 1e-8, |s| {
        let a = s.disk_matrix(n, n);
        let pair = regular_right_eigen(&a)?;
        let derived = eigen_from_regular(&a, &pair)?;
        let spectrum = cm_eigen(&a.psi_big())?.values;
        let scale = a.norm().max(1.0);
        Ok(derived
            .iter()
            .map(|d| {
                spectrum
                    .iter()
                    .map(|l| (d - l).norm())
                    .fold(f64::INFINITY, f64::min)
                    / scale
            })
            .fold(0.0, f64::max))
    });
    r.law("similarity_of_conjugates", 0.0, |s| {
        let a = s.disk_matrix(n, n);
        let p = s.invertible_matrix(n);
        let b = conjugate(&a, &p)?;
        let q = s.invertible_matrix(n);
        let c = conjugate(&b, &q)?;
        let ok = similar(&a, &a)? && similar(&a, &b)? && similar(&b, &a)? && similar(&a, &c)?;
        Ok(flag(ok))
    });
    r.law("non_similar_detected", 0.0, |s| {
        let a = s.disk_matrix(n, n);
        let b = s.disk_matrix(n, n);
        Ok(flag(!similar(&a, &b)?))
    });
    r.law("diagonalizable_construction", 0.0, |s| {
        let d = BqMatrix::diag(&(0..n).map(|_| s.disk_scalar()).collect::<Vec<_>>());
        let p = s.invertible_matrix(n);
        Ok(flag(diagonalizable_over_q(&conjugate(&d, &p)?)?))
    });

    // central determinant
    r.law("det_of_complex_is_squared", 1e-10, |s| {
        let z = disk_complex(s, n, n);
        Ok(rel(
            central_det(&BqMatrix::from_complex(&z))?.0,
            cm_det(&z)?.powu(2),
        ))
    });
    r.law("det_invertibility", 0.0, |s| {
        let a = if s.usize_in(0, 1) == 0 {
            s.disk_matrix(n, n)
        } else if n == 1 {
            BqMatrix::diag(&[s.zero_divisor()])
        } else {
            let k = s.usize_in(1, n - 1);
            s.low_rank_matrix(n, n, k)
        };
        let d = central_det(&a)?.0.norm();
        let smax = cm_svd(&a.psi_big()).s[0];
        let nonzero = d > 1e-10 * smax.powi(2 * n as i32);
        Ok(flag(nonzero == a.inverse().is_ok()))
    });
    r.law("det_multiplicative", 1e-10, |s| {
        let a = s.disk_matrix(n, n);
        let b = s.disk_matrix(n, n);
        Ok(rel(
            central_det(&a.matmul(&b)?)?.0,
            central_det(&a)?.0 * central_det(&b)?.0,
        ))
    });
    r.law("det_complex_scalar", 1e-10, |s| {
        let a = s.int_matrix(n, n);
        let l = s.int_scalar().a0;
        let lhs = central_det(&a.scale_complex(l))?.0;
        Ok(rel(lhs, l.powu(2 * n as u32) * central_det(&a)?.0))
    });
    r.law("det_inverse", 1e-10, |s| {
        let a = s.invertible_matrix(n);
        Ok(rel(central_det(&a.inverse()?)?.0, central_det(&a)?.0.inv()))
    });
    r.law("det_hconj", 1e-10, |s| {
        let a = s.disk_matrix(n, n);
        Ok(rel(central_det(&a.hconj())?.0, central_det(&a)?.0.conj()))
    });
    r.law("det_triangular", 1e-10, |s| {
        let mut a = s.disk_matrix(n, n);
        for i in 0..n {
            for j in 0..i {
                a.set(i, j, Biquaternion::ZERO);
            }
        }
        Ok(rel(triangular_central_det(&a)?.0, central_det(&a)?.0))
    });
    r.law("det_block_triangular", 1e-10, |s| {
        let k = s.usize_in(1, n);
        let (a1, a2) = (s.disk_matrix(k, k), s.disk_matrix(n, n));
        let mut a = BqMatrix::zeros(k + n, k + n);
        a.set_block(0, 0, &a1);
        a.set_block(k, k, &a2);
        a.set_block(0, k, &s.disk_matrix(k, n));
        Ok(rel(
            central_det(&a)?.0,
            central_det(&a1)?.0 * central_det(&a2)?.0,
        ))
    });
    r.law("det_similarity_invariant", 1e-10, |s| {
        let a = s.disk_matrix(n, n);
        let p = s.invertible_matrix(n);
        Ok(rel(central_det(&conjugate(&a, &p)?)?.0, central_det(&a)?.0))
    });
    r.law("det_scaling_exponent_is_n", 0.0, |s| {
        let a = s.invertible_matrix(n);
        let mu = loop {
            let m = s.int_scalar();
            if !m.is_zero_divisor() {
                break m;
            }
        };
        Ok(flag(scalar_scaling_law_probe(&a, mu)?.exponent == n))
    });
    r.law("cayley_hamilton", 1e-8, |s| {
        let a = s.int_matrix(n, n);
        Ok(cayley_hamilton(&a)?.relative())
    });

    VerifyReport {
        seed,
        trials,
        size: n,
        laws: r.laws,
    }
}
