fn main() {
    std::process::exit(kepler_alpha_cli::cli_main(std::env::args_os()));
}
