fn main() { std::process::exit(numberwall::cli::run_main()); }
