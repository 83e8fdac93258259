fn main() {
    std::process::exit(qdeform::cli::parse_args_and_run(std::env::args_os()));
}
