fn main() {
    std::process::exit(bqmat::cli::main_with_env());
}
