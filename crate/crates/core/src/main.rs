fn main() {
    std::process::exit(sonc::cli::run(std::env::args_os()));
}
