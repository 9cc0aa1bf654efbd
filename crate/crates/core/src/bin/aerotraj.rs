fn main() {
    std::process::exit(aerotraj::harness::cli(std::env::args_os()));
}
