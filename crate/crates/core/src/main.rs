fn main() {
    std::process::exit(descartes::cli::main_with_args(std::env::args_os()));
}
