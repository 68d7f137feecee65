//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use bqmat::complex_linalg::{cm_det, cm_eigen, cm_pinv, CMatrix, C64, DEFAULT_RANK_TOL};
use bqmat::det::{cayley_hamilton, central_det, scalar_scaling_law_probe, triangular_central_det};
use bqmat::matrix::{penrose_residual, q_frame, reconstruct};
use bqmat::sample::Sampler;
use bqmat::scalar::null_form;
use bqmat::spectral::{
    diagonalizable_over_q, eigen_from_regular, regular_right_eigen, right_eigen_complex, similar,
};
use bqmat::{Biquaternion, BqMatrix};

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rel(x: C64, y: C64) -> f64 {
    let d = (x - y).norm();
    if d == 0.0 {
        0.0
    } else {
        d / x.norm().max(y.norm())
    }
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn conjugate(a: &BqMatrix, p: &BqMatrix) -> BqMatrix {
    &(&p.inverse().unwrap() * a) * p
}

fn dilate(a: &BqMatrix) -> BqMatrix {
    let (m, n) = a.shape();
    let mut d = BqMatrix::zeros(2 * m, 2 * n);
    d.set_block(0, 0, a);
    d.set_block(m, n, a);
    d
}

fn universal_factorization() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(101);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = s.int_scalar();
        let q = q_frame(1);
        let lhs = &(&q * &BqMatrix::diag(&[a, a])) * &q;
        worst = worst.max(lhs.max_abs_diff(&BqMatrix::from_complex(&a.psi())));
        worst = worst.max(reconstruct(&a.psi()).unwrap().get(0, 0).max_abs_diff(&a));
    }
    for _ in 0..200 {
        let (m, n) = (s.usize_in(1, 4), s.usize_in(1, 4));
        let a = s.int_matrix(m, n);
        let lhs = &(&q_frame(m) * &dilate(&a)) * &q_frame(n);
        worst = worst.max(lhs.max_abs_diff(&BqMatrix::from_complex(&a.psi_big())));
        worst = worst.max(reconstruct(&a.psi_big()).unwrap().max_abs_diff(&a));
    }
    let elapsed = start.elapsed();
    check(
        worst == 0.0 && elapsed < Duration::from_secs(5),
        format!("max residual {worst:.1e}, {elapsed:.2?}"),
    )
}

fn homomorphism() -> Outcome {
    let mut s = Sampler::new(102);
    let mut exact = 0.0f64;
    let mut float = 0.0f64;
    for k in 0..500 {
        let (m, p, n) = (s.usize_in(1, 4), s.usize_in(1, 4), s.usize_in(1, 4));
        let (a, b) = if k % 2 == 0 {
            (s.int_matrix(m, p), s.int_matrix(p, n))
        } else {
            (s.disk_matrix(m, p), s.disk_matrix(p, n))
        };
        let ab = &a * &b;
        let big_ref = &a.psi_big() * &b.psi_big();
        let small_ref = &a.psi_small() * &b.psi_small();
        let d = ab
            .psi_big()
            .max_abs_diff(&big_ref)
            .max(ab.psi_small().max_abs_diff(&small_ref));
        if k % 2 == 0 {
            exact = exact.max(d);
        } else {
            float = float.max(d / big_ref.frobenius_norm().max(1.0));
        }
    }
    check(
        exact == 0.0 && float <= 1e-12,
        format!("integer {exact:.1e}, float relative {float:.1e}"),
    )
}

fn det_is_weak_norm() -> Outcome {
    let mut s = Sampler::new(103);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = s.int_scalar();
        worst = worst.max((cm_det(&a.psi()).unwrap() - a.weak_norm()).norm());
    }
    check(worst == 0.0, format!("max residual {worst:.1e}"))
}

fn moore_penrose() -> Outcome {
    let mut s = Sampler::new(104);
    let mut penrose = 0.0f64;
    let mut rep = 0.0f64;
    for k in 0..200 {
        let (m, n) = (s.usize_in(1, 4), s.usize_in(1, 4));
        let a = match k % 3 {
            0 => s.disk_matrix(m, n),
            1 => {
                let r = s.usize_in(1, m.min(n));
                s.low_rank_matrix(m, n, r)
            }
            _ => BqMatrix::from_fn(m, n, |_, _| s.zero_divisor()),
        };
        let x = a.pinv();
        penrose = penrose.max(penrose_residual(&a, &x).unwrap() / a.norm().max(1.0));
        let reference = cm_pinv(&a.psi_big(), DEFAULT_RANK_TOL);
        rep = rep.max(x.psi_big().max_abs_diff(&reference));
    }
    let zd = Biquaternion::new(c(1.0, 0.0), c(0.0, 1.0), C64::default(), C64::default());
    let scalar = zd.pinv().max_abs_diff(&zd.scale(c(0.25, 0.0)));
    check(
        penrose <= 1e-10 && rep <= 1e-10 && scalar <= 1e-12,
        format!("penrose {penrose:.1e}, representation {rep:.1e}, pinv(1+ie1) {scalar:.1e}"),
    )
}

fn pairing_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

fn right_eigenpairs() -> Outcome {
    let mut s = Sampler::new(105);
    let mut resid = 0.0f64;
    let mut pairing = 0.0f64;
    for _ in 0..100 {
        let n = s.usize_in(1, 6);
        let a = s.disk_matrix(n, n);
        let pairs = right_eigen_complex(&a).unwrap();
        for p in &pairs {
            resid = resid.max(p.residual / a.norm());
        }
        let values: Vec<C64> = pairs.iter().map(|p| p.value).collect();
        let reference = cm_eigen(&a.psi_big()).unwrap().values;
        pairing = pairing.max(pairing_distance(&values, &reference));
    }
    check(
        resid <= 1e-9 && pairing <= 1e-8,
        format!("residual/|A| {resid:.1e}, pairing {pairing:.1e}"),
    )
}

fn regular_samples() -> Vec<BqMatrix> {
    let mut s = Sampler::new(106);
    let mut out: Vec<BqMatrix> = (0..100)
        .map(|_| {
            let n = s.usize_in(1, 6);
            s.disk_matrix(n, n)
        })
        .collect();
    out.push(BqMatrix::diag(&[null_form(C64::default())]));
    out
}

fn regular_eigenpair() -> Outcome {
    let mut worst = 0.0f64;
    for a in regular_samples() {
        let pair = match regular_right_eigen(&a) {
            Ok(p) => p,
            Err(e) => return Err(format!("{e}")),
        };
        if pair.vector.rank().twice_rank != 2 {
            return Err("eigenvector rank is not 1".into());
        }
        worst = worst.max(pair.residual / a.norm());
    }
    check(
        worst <= 1e-9,
        format!("residual/|A| {worst:.1e}, 101 samples"),
    )
}

fn regular_round_trip() -> Outcome {
    let mut worst = 0.0f64;
    for a in regular_samples() {
        let pair = regular_right_eigen(&a).map_err(|e| e.to_string())?;
        let derived = eigen_from_regular(&a, &pair).map_err(|e| e.to_string())?;
        let spectrum = cm_eigen(&a.psi_big()).unwrap().values;
        for d in derived {
            let dist = spectrum
                .iter()
                .map(|l| (d - l).norm())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(dist);
        }
    }
    check(
        worst <= 1e-8,
        format!("max distance to spectrum {worst:.1e}"),
    )
}

fn similarity() -> Outcome {
    let mut s = Sampler::new(107);
    let mut missed = 0;
    let mut false_hits = 0;
    for _ in 0..100 {
        let n = s.usize_in(1, 4);
        let a = s.disk_matrix(n, n);
        let p = s.invertible_matrix(n);
        if !similar(&a, &conjugate(&a, &p)).unwrap() {
            missed += 1;
        }
    }
    for k in 0..100 {
        let n = s.usize_in(2, 4);
        let (a, b) = if k % 2 == 0 {
            (s.disk_matrix(n, n), s.disk_matrix(n, n))
        } else {
            // same spectrum, different Jordan structure
            let lambda = s.disk();
            let mut j = CMatrix::diag(&vec![lambda; n]);
            let d = BqMatrix::from_complex(&j);
            j[(0, 1)] = C64::new(1.0, 0.0);
            let jb = BqMatrix::from_complex(&j);
            let p = s.invertible_matrix(n);
            (conjugate(&d, &p), conjugate(&jb, &s.invertible_matrix(n)))
        };
        if similar(&a, &b).unwrap() {
            false_hits += 1;
        }
    }
    check(
        missed == 0 && false_hits == 0,
        format!("{missed} similar pairs missed, {false_hits} non-similar pairs accepted"),
    )
}

fn diagonalizability() -> Outcome {
    let mut s = Sampler::new(108);
    let mut wrong = 0;
    for _ in 0..50 {
        let n = s.usize_in(1, 4);
        let d = BqMatrix::diag(&(0..n).map(|_| s.disk_scalar()).collect::<Vec<_>>());
        let p = s.invertible_matrix(n);
        if !diagonalizable_over_q(&conjugate(&d, &p)).unwrap() {
            wrong += 1;
        }
    }
    // ψ(A) similar to J_3(λ) ⊕ [μ]
    let mut j = CMatrix::zeros(4, 4);
    let lambda = c(0.5, -1.0);
    for k in 0..3 {
        j[(k, k)] = lambda;
    }
    j[(0, 1)] = C64::new(1.0, 0.0);
    j[(1, 2)] = C64::new(1.0, 0.0);
    j[(3, 3)] = c(2.0, 0.0);
    let a = BqMatrix::from_psi_small(&j).unwrap();
    let p = s.invertible_matrix(2);
    let defective = diagonalizable_over_q(&conjugate(&a, &p)).unwrap();
    check(
        wrong == 0 && !defective,
        format!("{wrong} diagonal constructions rejected, size-3 block reported {defective}"),
    )
}

fn central_determinant() -> Outcome {
    let mut s = Sampler::new(109);
    let mut worst = [0.0f64; 8];
    let mut invertibility_mismatch = 0;
    for t in 0..200 {
        let n = s.usize_in(1, 4);
        let a = s.disk_matrix(n, n);
        let b = s.disk_matrix(n, n);
        let da = central_det(&a).unwrap().0;
        let z = CMatrix::from_fn(n, n, |_, _| s.disk());
        worst[0] = worst[0].max(rel(
            central_det(&BqMatrix::from_complex(&z)).unwrap().0,
            cm_det(&z).unwrap().powu(2),
        ));
        worst[1] = worst[1].max(rel(
            central_det(&(&a * &b)).unwrap().0,
            da * central_det(&b).unwrap().0,
        ));
        let ai = s.int_matrix(n, n);
        let l = s.int_scalar().a0;
        worst[2] = worst[2].max(rel(
            central_det(&ai.scale_complex(l)).unwrap().0,
            l.powu(2 * n as u32) * central_det(&ai).unwrap().0,
        ));
        worst[3] = worst[3].max(rel(central_det(&a.inverse().unwrap()).unwrap().0, da.inv()));
        worst[4] = worst[4].max(rel(central_det(&a.hconj()).unwrap().0, da.conj()));
        let mut u = a.clone();
        for i in 0..n {
            for j in 0..i {
                u.set(i, j, Biquaternion::ZERO);
            }
        }
        worst[5] = worst[5].max(rel(
            triangular_central_det(&u).unwrap().0,
            central_det(&u).unwrap().0,
        ));
        let mut blk = BqMatrix::zeros(2 * n, 2 * n);
        blk.set_block(0, 0, &a);
        blk.set_block(n, n, &b);
        blk.set_block(0, n, &s.disk_matrix(n, n));
        worst[6] = worst[6].max(rel(
            central_det(&blk).unwrap().0,
            da * central_det(&b).unwrap().0,
        ));
        let p = s.invertible_matrix(n);
        worst[7] = worst[7].max(rel(central_det(&conjugate(&a, &p)).unwrap().0, da));

        let m = if t % 2 == 0 {
            s.disk_matrix(n, n)
        } else if n == 1 {
            BqMatrix::diag(&[s.zero_divisor()])
        } else {
            let r = s.usize_in(1, n - 1);
            s.low_rank_matrix(n, n, r)
        };
        let d = central_det(&m).unwrap().0.norm();
        let smax = bqmat::complex_linalg::cm_svd(&m.psi_big()).s[0];
        if (d > 1e-10 * smax.powi(2 * n as i32)) != m.inverse().is_ok() {
            invertibility_mismatch += 1;
        }
    }
    let names = [
        "complex",
        "product",
        "complex-scalar",
        "inverse",
        "hconj",
        "triangular",
        "block",
        "similarity",
    ];
    let detail: Vec<String> = names
        .iter()
        .zip(worst)
        .map(|(n, w)| format!("{n} {w:.1e}"))
        .collect();
    check(
        worst.iter().all(|&w| w <= 1e-10) && invertibility_mismatch == 0,
        format!(
            "{}; invertibility {invertibility_mismatch} mismatches",
            detail.join(" ")
        ),
    )
}

fn scaling_probe() -> Outcome {
    let mut s = Sampler::new(110);
    let mut off = 0;
    for _ in 0..50 {
        let n = s.usize_in(1, 4);
        let a = s.invertible_matrix(n);
        let mu = loop {
            let m = s.int_scalar();
            if !m.is_zero_divisor() {
                break m;
            }
        };
        let probe = scalar_scaling_law_probe(&a, mu).map_err(|e| e.to_string())?;
        if probe.exponent != n {
            off += 1;
        }
    }
    check(
        off == 0,
        format!("measured exponent k = n in {}/50 trials", 50 - off),
    )
}

fn cayley_hamilton_law() -> Outcome {
    let mut s = Sampler::new(111);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = s.usize_in(1, 4);
        worst = worst.max(cayley_hamilton(&s.int_matrix(n, n)).unwrap().relative());
    }
    check(worst <= 1e-8, format!("residual/scale {worst:.1e}"))
}

fn half_rank() -> Outcome {
    let zd = Biquaternion::new(c(1.0, 0.0), c(0.0, 1.0), C64::default(), C64::default());
    let r = BqMatrix::diag(&[zd]).rank();
    let mut s = Sampler::new(112);
    let mut violations = 0;
    for k in 0..200 {
        let n = s.usize_in(1, 4);
        let a = if k % 2 == 0 {
            BqMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    s.zero_divisor()
                } else {
                    Biquaternion::ZERO
                }
            })
        } else {
            let r = s.usize_in(1, n);
            s.low_rank_matrix(n, n, r)
        };
        let b = {
            let r = s.usize_in(1, n);
            s.low_rank_matrix(n, n, r)
        };
        if (&a * &b).rank() > a.rank().min(b.rank()) {
            violations += 1;
        }
    }
    check(
        r.twice_rank == 1 && r.to_string() == "1/2" && violations == 0,
        format!("rank(1+ie1) = {r}, {violations} subadditivity violations"),
    )
}

fn cli_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_bqmat"))
            .args(["verify", "--seed", "42"])
            .output()
            .expect("binary runs")
    };
    let start = Instant::now();
    let first = run();
    let elapsed = start.elapsed();
    let second = run();
    let failing = String::from_utf8_lossy(&first.stdout)
        .lines()
        .filter(|l| l.ends_with("FAIL"))
        .count();
    check(
        first.stdout == second.stdout
            && first.status.success()
            && failing == 0
            && elapsed < Duration::from_secs(60),
        format!(
            "identical {}, {failing} failing laws, {elapsed:.2?} per run",
            first.stdout == second.stdout
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("universal factorization", universal_factorization),
        ("homomorphism laws", homomorphism),
        ("det psi(a) = n(a)", det_is_weak_norm),
        ("Moore-Penrose inverse", moore_penrose),
        ("complex right eigenpairs", right_eigenpairs),
        ("regular right eigenpair", regular_eigenpair),
        ("regular eigenpair round trip", regular_round_trip),
        ("similarity", similarity),
        ("diagonalizability", diagonalizability),
        ("central determinant laws", central_determinant),
        ("scalar scaling exponent", scaling_probe),
        ("Cayley-Hamilton", cayley_hamilton_law),
        ("half-integer rank", half_rank),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name}: {detail}", k + 1);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
