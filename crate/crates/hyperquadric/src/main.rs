fn main() {
    std::process::exit(hyperquadric::cli::main_with_args(std::env::args_os()));
}
