use std::io::Write;
use std::process::ExitCode;

use lexford::cli;
use lexford::Limits;

fn main() -> ExitCode {
    let outcome = cli::run_args(std::env::args_os(), &Limits::from_env());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
