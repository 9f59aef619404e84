fn main() {
    let code = genconf::cli::run(std::env::args());
    std::process::exit(code);
}
