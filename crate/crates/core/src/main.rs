fn main() {
    std::process::exit(qlaser::cli::main_entry(std::env::args_os()));
}
