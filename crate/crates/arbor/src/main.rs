fn main() {
    std::process::exit(arbor::cli::main_with_args(std::env::args_os()));
}
