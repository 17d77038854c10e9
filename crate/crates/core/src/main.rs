fn main() {
    std::process::exit(graphdesign::cli::main_with(std::env::args_os()));
}
