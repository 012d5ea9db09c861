fn main() {
    std::process::exit(archtrop_kit::cli::main_with_args(std::env::args_os()));
}
