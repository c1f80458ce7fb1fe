fn main() {
    std::process::exit(k3walls_cli::run());
}
