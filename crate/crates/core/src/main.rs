fn main() {
    std::process::exit(trsim::cli::main_with_args(std::env::args_os()));
}
