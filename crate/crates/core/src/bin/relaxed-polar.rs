fn main() {
    std::process::exit(relaxed_polar::cli::run(std::env::args_os()));
}
