use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(surface_io::cli::run_cli(std::env::args_os()) as u8)
}
