fn main() {
    std::process::exit(pseudoquad::cli::main_with_args(std::env::args_os()));
}
