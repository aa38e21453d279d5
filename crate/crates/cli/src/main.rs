fn main() {
    std::process::exit(framelab::run(std::env::args_os()));
}
