fn main() {
    std::process::exit(hjsplit::cli::run_from(std::env::args_os()));
}
