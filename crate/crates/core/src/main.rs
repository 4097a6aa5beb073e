fn main() {
    std::process::exit(boxlab::cli::main_with_args(std::env::args_os()));
}
