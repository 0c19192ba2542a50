use std::process::ExitCode;

fn main() -> ExitCode {
    qforms::cli::run_from(std::env::args_os())
}
