use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cfsphere_cli::run_cli(std::env::args_os()) as u8)
}
