fn main() {
    std::process::exit(curiosity_order::cli::run(std::env::args_os()));
}
