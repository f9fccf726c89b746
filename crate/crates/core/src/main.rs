fn main() {
    std::process::exit(koszulreg::cli::run(std::env::args_os()));
}
