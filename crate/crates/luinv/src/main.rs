use std::process;

fn main() {
    process::exit(luinv::cli::run(std::env::args_os()));
}
