use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(symdisc::cli::run(std::env::args()) as u8)
}
