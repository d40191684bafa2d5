fn main() {
    std::process::exit(gridvuln::cli::run(std::env::args_os()));
}
