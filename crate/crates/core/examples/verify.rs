use bqmat::verify::verify_suite;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("numeric argument"));
    let seed = args.next().unwrap_or(42);
    let trials = args.next().unwrap_or(25) as usize;
    let report = verify_suite(seed, trials, 3);
    print!("{}", report.render());
    if !report.all_passed() {
        std::process::exit(1);
    }
}
