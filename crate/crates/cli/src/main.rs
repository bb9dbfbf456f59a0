use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(kirkwood_cli::run(std::env::args_os()))
}
