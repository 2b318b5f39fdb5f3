fn main() {
    std::process::exit(qoe_cli::main_with_args(std::env::args_os()));
}
