fn main() {
    std::process::exit(gentile_partitions::cli::main_with_args(std::env::args_os()));
}
