fn main() {
    std::process::exit(k22::cli::run(std::env::args_os()));
}
