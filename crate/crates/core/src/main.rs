fn main() {
    std::process::exit(exkh::cli::main_with_args(std::env::args_os()));
}
