fn main() {
    std::process::exit(collatz_core::cli::run(std::env::args_os()));
}
