use bqmat::complex_linalg::C64;
use bqmat::Biquaternion;

fn main() {
    let i = C64::new(0.0, 1.0);
    let a = Biquaternion::new(
        C64::new(1.0, 0.0),
        C64::new(2.0, 1.0),
        C64::new(0.0, -1.0),
        i,
    );

    println!("a        = {a}");
    println!("dual(a)  = {}", a.dual());
    println!("n(a)     = {}", a.weak_norm());
    println!("psi(a)   = {:?}", a.psi());
    println!("a^-1 a   = {}", a.inverse().unwrap() * a);

    let (form, case) = a.canonical_form();
    let p = a.similarity_witness().unwrap();
    println!("canonical ({case}) = {form}");
    println!("p^-1 a p          = {}", p.inverse().unwrap() * a * p);

    // zero divisors have no inverse but do have a Moore-Penrose inverse
    let z = Biquaternion::new(
        C64::new(1.0, 0.0),
        i,
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
    );
    println!("n(1 + i e1) = {}", z.weak_norm());
    println!("pinv        = {}", z.pinv());
    let (form, case) = Biquaternion::new(C64::new(3.0, 0.0), C64::default(), C64::new(1.0, 0.0), i)
        .canonical_form();
    println!("3 + e2 + i e3 -> {case}: {form}");
}
