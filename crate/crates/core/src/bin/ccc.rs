fn main() {
    let cfg = toric_ccc::cli::from_args();
    std::process::exit(toric_ccc::cli::main_with(&cfg));
}
