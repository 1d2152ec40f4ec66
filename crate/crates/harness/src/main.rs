fn main() {
    std::process::exit(circdiam_harness::cli::run(std::env::args_os()));
}
