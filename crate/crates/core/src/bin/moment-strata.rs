fn main() {
    std::process::exit(moment_strata::cli::main_with(std::env::args_os()));
}
