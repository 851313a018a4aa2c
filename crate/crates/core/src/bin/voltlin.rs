fn main() {
    std::process::exit(voltlin::harness::cli::cli_main());
}
