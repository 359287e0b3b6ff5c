fn main() {
    std::process::exit(hermsep::cli::run(std::env::args_os()));
}
