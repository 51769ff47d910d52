use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(jamsel::cli::run(std::env::args_os()))
}
