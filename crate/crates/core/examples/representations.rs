use bqmat::complex_linalg::C64;
use bqmat::matrix::{q_frame, reconstruct};
use bqmat::{Biquaternion, BqMatrix};

fn main() {
    let e = |k: usize| [Biquaternion::E1, Biquaternion::E2, Biquaternion::E3][k];
    let a = BqMatrix::from_fn(2, 3, |r, c| {
        Biquaternion::real((r + c) as f64) + e((r + 2 * c) % 3)
    });

    let big = a.psi_big();
    println!("Psi(A) is {}x{}", big.rows(), big.cols());
    println!("psi(A) = {:?}", a.psi_small());

    let mut d = BqMatrix::zeros(4, 6);
    d.set_block(0, 0, &a);
    d.set_block(2, 3, &a);
    let factored = &(&q_frame(2) * &d) * &q_frame(3);
    println!(
        "Q diag(A, A) Q == Psi(A): {}",
        factored == BqMatrix::from_complex(&big)
    );
    println!("frames recover A: {}", reconstruct(&big).unwrap() == a);

    println!("rank(A) = {}", a.rank());
    let x = a.pinv();
    println!(
        "|A X A - A| = {:.2e}",
        (&(&a * &x) * &a).try_sub(&a).unwrap().norm()
    );

    let z = Biquaternion::new(
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::default(),
        C64::default(),
    );
    let s = BqMatrix::diag(&[z, Biquaternion::E2]);
    println!("rank(diag(1 + i e1, e2)) = {}", s.rank());
    println!("inverse: {:?}", s.inverse().err());
}
