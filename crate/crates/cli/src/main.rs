fn main() {
    std::process::exit(hfree_cli::run(std::env::args_os()));
}
