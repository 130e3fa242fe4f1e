fn main() {
    std::process::exit(koedds::cli::run(std::env::args_os()));
}
