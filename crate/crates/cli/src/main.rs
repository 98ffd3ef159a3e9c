use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pmetric_cli::commands::EXIT_INVALID;
use pmetric_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    let outcome = execute(&cli);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
