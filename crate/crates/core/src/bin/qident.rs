fn main() {
    std::process::exit(qident::cli::run(std::env::args_os()));
}
