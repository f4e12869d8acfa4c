fn main() {
    std::process::exit(lumesh::cli::main_with_args(std::env::args_os()));
}
