fn main() {
    std::process::exit(dispersol::cli::run(std::env::args_os()));
}
