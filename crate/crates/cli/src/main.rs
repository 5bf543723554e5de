fn main() {
    std::process::exit(hhv::cli::execute(std::env::args_os()));
}
