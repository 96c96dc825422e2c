fn main() {
    std::process::exit(zariski::cli::run());
}
