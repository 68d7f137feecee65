use proptest::prelude::*;

use bqmat::complex_linalg::{
    cm_charpoly, cm_det, cm_eigen, cm_jordan_fingerprint, cm_pinv, cm_svd, eigen_residual,
    penrose_residual as cm_penrose, CMatrix, JordanTol, C64, DEFAULT_RANK_TOL, PAIRING_REL_TOL,
};
use bqmat::det::{cayley_hamilton, central_det};
use bqmat::io::{parse_matrix, write_matrix};
use bqmat::matrix::{e_frame, penrose_residual, q_frame, reconstruct, shuffle_perms};
use bqmat::spectral::{
    adjoint_vector, diagonalizable_over_q, eigen_from_regular, regular_right_eigen,
    right_eigen_complex, similar,
};
use bqmat::{Biquaternion, BqMatrix};

fn int_c() -> impl Strategy<Value = C64> + Clone {
    (-5i32..=5, -5i32..=5).prop_map(|(r, i)| C64::new(r as f64, i as f64))
}

fn disk_c() -> impl Strategy<Value = C64> + Clone {
    (0.0f64..1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn int_q() -> impl Strategy<Value = Biquaternion> + Clone {
    [int_c(), int_c(), int_c(), int_c()].prop_map(Biquaternion::from_components)
}

fn disk_q() -> impl Strategy<Value = Biquaternion> + Clone {
    [disk_c(), disk_c(), disk_c(), disk_c()].prop_map(Biquaternion::from_components)
}

fn bq_matrix<S: Strategy<Value = Biquaternion> + Clone>(
    entry: S,
    rows: usize,
    cols: usize,
) -> impl Strategy<Value = BqMatrix> {
    prop::collection::vec(entry, rows * cols)
        .prop_map(move |e| BqMatrix::new(rows, cols, e).unwrap())
}

fn int_matrix(max: usize) -> impl Strategy<Value = BqMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| bq_matrix(int_q(), m, n))
}

fn square<S: Strategy<Value = Biquaternion> + Clone + 'static>(
    entry: S,
    max: usize,
) -> impl Strategy<Value = BqMatrix> {
    (1..=max).prop_flat_map(move |n| bq_matrix(entry.clone(), n, n))
}

fn square_pair(max: usize) -> impl Strategy<Value = (BqMatrix, BqMatrix)> {
    (1..=max).prop_flat_map(|n| (bq_matrix(disk_q(), n, n), bq_matrix(disk_q(), n, n)))
}

fn complex_square(max: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(disk_c(), n * n).prop_map(move |d| CMatrix::new(n, n, d).unwrap())
    })
}

/// A square disk matrix with an integer-grid conjugator that is invertible.
fn conjugated(max: usize) -> impl Strategy<Value = (BqMatrix, BqMatrix)> {
    (1..=max)
        .prop_flat_map(|n| (bq_matrix(disk_q(), n, n), bq_matrix(int_q(), n, n)))
        .prop_filter("invertible conjugator", |(_, p)| {
            p.rank().twice_rank == 2 * p.rows()
        })
}

fn conj(a: &BqMatrix, p: &BqMatrix) -> BqMatrix {
    &(&p.inverse().unwrap() * a) * p
}

fn rel(x: C64, y: C64) -> f64 {
    let d = (x - y).norm();
    if d == 0.0 {
        0.0
    } else {
        d / x.norm().max(y.norm())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // complex engine

    #[test]
    fn cm_det_is_multiplicative(n in 1usize..5, seed in prop::collection::vec(int_c(), 32)) {
        let a = CMatrix::from_fn(n, n, |i, j| seed[i * n + j]);
        let b = CMatrix::from_fn(n, n, |i, j| seed[16 + i * n + j]);
        let lhs = cm_det(&(&a * &b)).unwrap();
        let rhs = cm_det(&a).unwrap() * cm_det(&b).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-10);
    }

    #[test]
    fn cm_svd_reconstructs(rows in 1usize..8, cols in 1usize..8, d in prop::collection::vec(disk_c(), 64)) {
        let a = CMatrix::from_fn(rows, cols, |i, j| d[i * 8 + j]);
        let svd = cm_svd(&a);
        prop_assert!(svd.reconstruct().max_abs_diff(&a) <= 1e-12 * a.frobenius_norm().max(1.0));
        prop_assert!(svd.s.windows(2).all(|w| w[0] >= w[1]) && svd.s.iter().all(|&s| s >= 0.0));
    }

    #[test]
    fn cm_pinv_satisfies_penrose(m in 1usize..6, n in 1usize..6, d in prop::collection::vec(disk_c(), 24)) {
        let u = CMatrix::from_fn(m, 2, |i, j| d[i * 2 + j]);
        let v = CMatrix::from_fn(2, n, |i, j| d[12 + i * 6 + j]);
        let a = &u * &v;
        let x = cm_pinv(&a, DEFAULT_RANK_TOL);
        prop_assert!(cm_penrose(&a, &x).unwrap() <= 1e-10 * a.frobenius_norm().max(1.0));
    }

    #[test]
    fn cm_eigen_residual_is_small(a in complex_square(6)) {
        let e = cm_eigen(&a).unwrap();
        prop_assert!(eigen_residual(&a, &e) <= 1e-9 * a.frobenius_norm().max(1.0));
    }

    #[test]
    fn charpoly_vanishes_on_eigenvalues(a in complex_square(6)) {
        let p = cm_charpoly(&a).unwrap();
        prop_assert!(p.is_monic() && p.degree() == Some(a.rows()));
        for l in cm_eigen(&a).unwrap().values {
            prop_assert!(p.eval(l).norm() <= 1e-8 * p.magnitude_at(l.norm()).max(1.0));
        }
    }

    // scalars

    #[test]
    fn scalar_representation_is_exact_homomorphism(a in int_q(), b in int_q()) {
        prop_assert_eq!((a * b).psi(), &a.psi() * &b.psi());
        prop_assert_eq!((a + b).psi(), &a.psi() + &b.psi());
        prop_assert_eq!(cm_det(&a.psi()).unwrap(), a.weak_norm());
        prop_assert_eq!(a.hconj().psi(), a.psi().adjoint());
    }

    #[test]
    fn scalar_round_trips(a in int_q(), m in prop::collection::vec(int_c(), 4)) {
        prop_assert_eq!(Biquaternion::from_psi(&a.psi()).unwrap(), a);
        let m = CMatrix::new(2, 2, m).unwrap();
        prop_assert_eq!(Biquaternion::from_psi(&m).unwrap().psi(), m);
        prop_assert_eq!(reconstruct(&a.psi()).unwrap().get(0, 0), a);
    }

    #[test]
    fn conjugation_laws(a in int_q(), b in int_q()) {
        prop_assert_eq!(a.dual().dual(), a);
        prop_assert_eq!(a.cconj().cconj(), a);
        prop_assert_eq!(a.hconj().hconj(), a);
        prop_assert_eq!((a + b).dual(), a.dual() + b.dual());
        prop_assert_eq!((a + b).cconj(), a.cconj() + b.cconj());
        prop_assert_eq!((a * b).dual(), b.dual() * a.dual());
        prop_assert_eq!((a * b).cconj(), a.cconj() * b.cconj());
        prop_assert_eq!((a * b).hconj(), b.hconj() * a.hconj());
        prop_assert_eq!(a * a.dual(), Biquaternion::complex(a.weak_norm()));
    }

    #[test]
    fn scalar_pinv_penrose(a in disk_q(), s in disk_q(), t in disk_q(), zd in any::<bool>()) {
        let z = Biquaternion::new(C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::default(), C64::default());
        let a = if zd { s * z * t } else { a };
        let am = BqMatrix::diag(&[a]);
        prop_assert!(penrose_residual(&am, &BqMatrix::diag(&[a.pinv()])).unwrap() <= 1e-10);
    }

    #[test]
    fn scalar_is_similar_to_its_canonical_form(a in disk_q()) {
        let (form, _) = a.canonical_form();
        let p = a.similarity_witness().unwrap();
        prop_assert!((p.inverse().unwrap() * a * p).approx_eq(&form, 1e-8 * (1.0 + a.magnitude())));
        let tol = JordanTol::default();
        let fa = cm_jordan_fingerprint(&a.psi(), &tol).unwrap();
        let ff = cm_jordan_fingerprint(&form.psi(), &tol).unwrap();
        prop_assert!(fa.matches(&ff, PAIRING_REL_TOL));
    }

    // matrices

    #[test]
    fn universal_factorization(a in int_matrix(4)) {
        let (m, n) = a.shape();
        let mut d = BqMatrix::zeros(2 * m, 2 * n);
        d.set_block(0, 0, &a);
        d.set_block(m, n, &a);
        prop_assert_eq!(&(&q_frame(m) * &d) * &q_frame(n), BqMatrix::from_complex(&a.psi_big()));
        prop_assert_eq!(reconstruct(&a.psi_big()).unwrap(), a);
    }

    #[test]
    fn q_frame_is_self_inverse_and_unitary(t in 1usize..6) {
        let q = q_frame(t);
        prop_assert_eq!(&q * &q, BqMatrix::identity(2 * t));
        prop_assert_eq!(&q * &q.hconj(), BqMatrix::identity(2 * t));
    }

    #[test]
    fn frame_commutation(a in int_matrix(4)) {
        let (m, n) = a.shape();
        let big = BqMatrix::from_complex(&a.psi_big());
        let (em, en) = (e_frame(m), e_frame(n));
        prop_assert_eq!(&(&big * &en.hconj()) * &en, &(&em.hconj() * &em) * &big);
    }

    #[test]
    fn matrix_representations(a in int_matrix(4), k in 1usize..5, seed in prop::collection::vec(int_q(), 16)) {
        let b = BqMatrix::from_fn(a.cols(), k, |i, j| seed[(i * k + j) % 16]);
        let ab = &a * &b;
        prop_assert_eq!(ab.psi_big(), &a.psi_big() * &b.psi_big());
        prop_assert_eq!(ab.psi_small(), &a.psi_small() * &b.psi_small());
        prop_assert_eq!(a.hconj().psi_big(), a.psi_big().adjoint());
        let (g, h) = shuffle_perms(a.rows(), a.cols());
        prop_assert_eq!(&(&g * &a.psi_big()) * &h, a.psi_small());
    }

    #[test]
    fn pinv_is_unique(m in 1usize..4, n in 1usize..4, d in prop::collection::vec(disk_q(), 18)) {
        let a = BqMatrix::from_fn(m, n, |i, j| d[i * 3 + j]);
        let x = a.pinv();
        prop_assert!(penrose_residual(&a, &x).unwrap() <= 1e-10 * a.norm().max(1.0));
        let e = BqMatrix::from_fn(n, m, |i, j| d[9 + i * 3 + j]).scale_complex(C64::new(1e-6, 0.0));
        prop_assert!(penrose_residual(&a, &x.try_add(&e).unwrap()).unwrap() > 1e-12);
    }

    #[test]
    fn rank_is_subadditive(n in 1usize..5, d in prop::collection::vec(disk_q(), 32), r in 1usize..4) {
        let r = r.min(n);
        let l = BqMatrix::from_fn(n, r, |i, j| d[i * 4 + j]);
        let rr = BqMatrix::from_fn(r, n, |i, j| d[16 + i * 4 + j]);
        let z = Biquaternion::new(C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::default(), C64::default());
        let a = &l * &rr;
        let b = BqMatrix::from_fn(n, n, |i, j| if i == j { d[i] * z } else { Biquaternion::ZERO });
        let ab = &a * &b;
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    // spectral

    #[test]
    fn adjoint_vector_identities(a in int_matrix(4), x in prop::collection::vec(int_q(), 4), l in int_c()) {
        let x = BqMatrix::column_vector(&x[..a.cols()]);
        let lhs = adjoint_vector(&(&a * &x)).unwrap().as_column();
        prop_assert_eq!(lhs, &a.psi_big() * &adjoint_vector(&x).unwrap().as_column());
        let xl = adjoint_vector(&x.scale_complex(l)).unwrap().as_column();
        prop_assert_eq!(xl, adjoint_vector(&x).unwrap().as_column().scale(l));
    }

    #[test]
    fn eigenpair_residuals(a in square(disk_q(), 6)) {
        let scale = a.norm().max(1.0);
        for p in right_eigen_complex(&a).unwrap() {
            prop_assert!(p.residual <= 1e-9 * scale);
        }
        let pair = regular_right_eigen(&a).unwrap();
        prop_assert!(pair.residual <= 1e-9 * scale);
        prop_assert_eq!(pair.vector.rank().twice_rank, 2);
        let spectrum = cm_eigen(&a.psi_big()).unwrap().values;
        for d in eigen_from_regular(&a, &pair).unwrap() {
            let dist = spectrum.iter().map(|l| (d - l).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(dist <= 1e-8 * scale);
        }
    }

    #[test]
    fn similarity_is_an_equivalence((a, p) in conjugated(3), q in prop::collection::vec(int_q(), 9)) {
        let n = a.rows();
        let q = BqMatrix::from_fn(n, n, |i, j| q[i * 3 + j]);
        prop_assume!(q.rank().twice_rank == 2 * n);
        let b = conj(&a, &p);
        let c = conj(&b, &q);
        prop_assert!(similar(&a, &a).unwrap());
        prop_assert!(similar(&a, &b).unwrap() && similar(&b, &a).unwrap());
        prop_assert!(similar(&b, &c).unwrap() && similar(&a, &c).unwrap());
    }

    #[test]
    fn conjugated_diagonal_is_diagonalizable((a, p) in conjugated(4)) {
        let d = BqMatrix::diag(&(0..a.rows()).map(|k| a.get(k, k)).collect::<Vec<_>>());
        prop_assert!(diagonalizable_over_q(&conj(&d, &p)).unwrap());
    }

    // central determinant

    #[test]
    fn det_laws((a, b) in square_pair(4)) {
        let n = a.rows();
        let da = central_det(&a).unwrap().0;
        let db = central_det(&b).unwrap().0;
        prop_assert!(rel(central_det(&(&a * &b)).unwrap().0, da * db) <= 1e-10);
        prop_assert!(rel(central_det(&a.hconj()).unwrap().0, da.conj()) <= 1e-10);
        prop_assert!(rel(central_det(&a.inverse().unwrap()).unwrap().0, da.inv()) <= 1e-10);
        let mut blk = BqMatrix::zeros(2 * n, 2 * n);
        blk.set_block(0, 0, &a);
        blk.set_block(n, n, &b);
        blk.set_block(0, n, &b);
        prop_assert!(rel(central_det(&blk).unwrap().0, da * db) <= 1e-10);
    }

    #[test]
    fn det_is_similarity_invariant((a, p) in conjugated(4)) {
        let lhs = central_det(&conj(&a, &p)).unwrap().0;
        prop_assert!(rel(lhs, central_det(&a).unwrap().0) <= 1e-10);
    }

    #[test]
    fn det_complex_scalar_law(a in square(int_q(), 4), l in int_c()) {
        let n = a.rows() as u32;
        let lhs = central_det(&a.scale_complex(l)).unwrap().0;
        prop_assert!(rel(lhs, l.powu(2 * n) * central_det(&a).unwrap().0) <= 1e-10);
    }

    #[test]
    fn det_detects_invertibility(a in square(int_q(), 4), r in 1usize..4) {
        let n = a.rows();
        let r = r.min(n);
        // keep r columns, fill the rest with sums so the rank drops when r < n
        let b = BqMatrix::from_fn(n, n, |i, j| if j < r { a.get(i, j) } else { a.get(i, j % r) + a.get(i, 0) });
        for m in [&a, &b] {
            let d = central_det(m).unwrap().0.norm();
            let smax = cm_svd(&m.psi_big()).s[0];
            prop_assert_eq!(d > 1e-10 * smax.powi(2 * n as i32), m.inverse().is_ok());
        }
    }

    #[test]
    fn cayley_hamilton_holds(a in square(int_q(), 5)) {
        prop_assert!(cayley_hamilton(&a).unwrap().relative() <= 1e-8);
    }

    // documents

    #[test]
    fn document_round_trip(a in (1usize..4, 1usize..4).prop_flat_map(|(m, n)| bq_matrix(disk_q(), m, n))) {
        let back = parse_matrix(&write_matrix(&a)).unwrap();
        for (p, q) in a.entries().iter().zip(back.entries()) {
            for (x, y) in p.components().iter().zip(q.components()) {
                prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
                prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }
}
