fn main() {
    std::process::exit(occob::textio::cli::run(std::env::args_os()));
}
