fn main() {
    std::process::exit(cubic_genus::cli::run(std::env::args_os()));
}
