fn main() {
    std::process::exit(ltk::cli::run());
}
