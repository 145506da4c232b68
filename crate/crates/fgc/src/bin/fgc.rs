fn main() {
    std::process::exit(fgc::cli::cli_main(std::env::args().skip(1).collect()));
}
