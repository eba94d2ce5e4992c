fn main() {
    std::process::exit(minus_one::cli::run(std::env::args_os()));
}
