fn main() {
    std::process::exit(topo_tsp::cli::main_with_args(std::env::args_os()));
}
