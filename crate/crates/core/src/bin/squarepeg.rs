fn main() {
    std::process::exit(squarepeg::cli::main_with_args(std::env::args_os()));
}
