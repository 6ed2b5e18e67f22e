use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use twocat_cli::commands::{execute, Cli};

fn main() -> ExitCode {
    // Panics inside a check are reported as failed checks.
    std::panic::set_hook(Box::new(|_| {}));
    let cli = Cli::parse();
    let outcome = execute(&cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
