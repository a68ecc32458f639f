use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cloakrate_cli::run_cli(std::env::args_os(), &mut std::io::stderr()))
}
