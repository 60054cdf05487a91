fn main() {
    std::process::exit(ncluster::cli::main_with_args(std::env::args_os()));
}
