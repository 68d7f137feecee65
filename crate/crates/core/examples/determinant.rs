use bqmat::complex_linalg::C64;
use bqmat::det::{cayley_hamilton, central_charpoly, central_det, scalar_scaling_law_probe};
use bqmat::{Biquaternion, BqMatrix};

fn main() {
    let a = BqMatrix::from_fn(3, 3, |r, c| {
        let k = ((3 * r + c) * (3 * r + c) % 7) as f64;
        Biquaternion::from_parts([
            [k - 4.0, 1.0],
            [(r as f64) - 1.0, 0.0],
            [0.0, c as f64],
            [1.0, -1.0],
        ])
    });

    let d = central_det(&a).unwrap();
    println!("|A|_c = {:.6}", d.value());
    println!("sqrt  = {:.6}", d.sqrt());
    println!("|A^H|_c = {:.6}", central_det(&a.hconj()).unwrap().value());

    let p = central_charpoly(&a).unwrap();
    println!("p_A(x) = {p}");
    let ch = cayley_hamilton(&a).unwrap();
    println!("|p_A(A)| = {:.2e} (scale {:.2e})", ch.residual, ch.scale);

    let mu = Biquaternion::new(
        C64::new(1.0, 0.0),
        C64::new(2.0, 0.0),
        C64::new(0.0, 1.0),
        C64::default(),
    );
    let probe = scalar_scaling_law_probe(&a, mu).unwrap();
    println!(
        "|mu A|_c = n(mu)^{} |A|_c  (n = {}, mismatch {:.1e})",
        probe.exponent,
        a.rows(),
        probe.mismatch
    );
}
