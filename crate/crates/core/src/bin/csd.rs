fn main() {
    std::process::exit(colourful_depth::cli::run(std::env::args_os()));
}
