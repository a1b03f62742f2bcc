fn main() {
    std::process::exit(birange::cli::run(std::env::args_os()));
}
