fn main() {
    std::process::exit(coulomb::cli::run(std::env::args_os()));
}
