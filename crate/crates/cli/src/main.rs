fn main() {
    std::process::exit(subdiff_cli::main_with(std::env::args_os()));
}
