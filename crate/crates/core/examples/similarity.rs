use bqmat::complex_linalg::{CMatrix, C64};
use bqmat::spectral::{diagonalizable_over_q, similar, similar_to_complex};
use bqmat::{Biquaternion, BqMatrix};

fn main() {
    let d = BqMatrix::diag(&[Biquaternion::E1, Biquaternion::real(2.0) + Biquaternion::E2]);
    let p = BqMatrix::from_fn(2, 2, |r, c| {
        if r == c {
            Biquaternion::ONE
        } else {
            Biquaternion::E3 + Biquaternion::real(c as f64)
        }
    });
    let a = &(&p.inverse().unwrap() * &d) * &p;

    println!("A ~ D: {}", similar(&a, &d).unwrap());
    println!("A ~ I: {}", similar(&a, &BqMatrix::identity(2)).unwrap());
    println!("A diagonalizable: {}", diagonalizable_over_q(&a).unwrap());

    let (ok, j) = similar_to_complex(&a).unwrap();
    println!("A similar to a complex matrix: {ok}");
    if let Some(j) = j {
        println!("J = {j:?}");
    }

    let pm = BqMatrix::diag(&[Biquaternion::E1, -Biquaternion::E1]);
    println!(
        "diag(e1, -e1) similar to a complex matrix: {}",
        similar_to_complex(&pm).unwrap().0
    );

    // psi(B) carries a 3x3 Jordan block, which no diagonal matrix can produce
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 1)] = C64::new(1.0, 0.0);
    m[(1, 2)] = C64::new(1.0, 0.0);
    m[(3, 3)] = C64::new(1.0, 0.0);
    let b = BqMatrix::from_psi_small(&m).unwrap();
    println!("B diagonalizable: {}", diagonalizable_over_q(&b).unwrap());
}
