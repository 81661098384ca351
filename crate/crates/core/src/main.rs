fn main() {
    std::process::exit(rashba_ring::cli::run(std::env::args_os()));
}
