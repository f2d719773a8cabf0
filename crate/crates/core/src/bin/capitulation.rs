fn main() {
    std::process::exit(capitulation::cli::main_with_args());
}
