fn main() {
    std::process::exit(varlogic::cli::run(std::env::args_os()));
}
