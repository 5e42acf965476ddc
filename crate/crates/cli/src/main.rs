use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gupnl_cli::run(std::env::args_os()))
}
