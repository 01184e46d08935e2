fn main() {
    std::process::exit(vanishing::cli::run(std::env::args_os()));
}
