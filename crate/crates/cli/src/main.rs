fn main() {
    std::process::exit(jobsphere_cli::run(std::env::args_os()));
}
