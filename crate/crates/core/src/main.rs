fn main() {
    std::process::exit(modzeros::cli::run(std::env::args_os()));
}
