fn main() {
    std::process::exit(zpd_cli::run());
}
