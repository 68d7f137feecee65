use bqmat::complex_linalg::C64;
use bqmat::scalar::null_form;
use bqmat::spectral::{eigen_from_regular, regular_right_eigen, right_eigen_complex};
use bqmat::{Biquaternion, BqMatrix};

fn main() {
    let a = BqMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => Biquaternion::E1,
        (0, 1) => Biquaternion::real(2.0),
        (1, 0) => Biquaternion::E3,
        _ => Biquaternion::complex(C64::new(1.0, -1.0)),
    });

    for p in right_eigen_complex(&a).unwrap() {
        println!(
            "lambda = {:>24}  residual {:.1e}",
            format!("{:.6}", p.value),
            p.residual
        );
    }

    let pair = regular_right_eigen(&a).unwrap();
    println!("regular lambda = {}", pair.value);
    println!(
        "rank(X) = {}, residual {:.1e}",
        pair.vector.rank(),
        pair.residual
    );
    for v in eigen_from_regular(&a, &pair).unwrap() {
        println!("derived eigenvalue {v:.6}");
    }

    // a single Jordan chain: the regular eigenvalue is not similar to a diagonal one
    let n = BqMatrix::diag(&[null_form(C64::new(0.0, 0.0))]);
    let pair = regular_right_eigen(&n).unwrap();
    println!(
        "nilpotent: lambda = {}, X = {}",
        pair.value,
        pair.vector.get(0, 0)
    );
}
