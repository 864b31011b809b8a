fn main() {
    std::process::exit(pam_ageing::cli::run(std::env::args_os()));
}
