fn main() {
    std::process::exit(thermosep::cli::run(std::env::args_os()));
}
