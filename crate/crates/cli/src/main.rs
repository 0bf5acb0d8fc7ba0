fn main() {
    std::process::exit(covariant_forge_cli::run(std::env::args_os()));
}
