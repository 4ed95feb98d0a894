use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gridhom::cli::run(std::env::args()) as u8)
}
