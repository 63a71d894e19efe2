fn main() {
    std::process::exit(wlvc::cli::run(std::env::args_os()));
}
