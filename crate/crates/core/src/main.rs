fn main() {
    std::process::exit(cyclewalk::cli::main_with_args(std::env::args_os()));
}
