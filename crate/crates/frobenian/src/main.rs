fn main() {
    std::process::exit(frobenian::cli::run(std::env::args()));
}
