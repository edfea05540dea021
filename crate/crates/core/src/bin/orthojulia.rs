fn main() {
    std::process::exit(orthojulia::experiments::main_with_args(std::env::args_os()));
}
