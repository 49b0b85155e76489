use std::process::ExitCode;

use clap::Parser;
use hyperind_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let failed = outcome.output.starts_with("error: ");
    match (&cli.out, failed) {
        (Some(path), false) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        (_, true) => eprint!("{}", outcome.output),
        (None, false) => print!("{}", outcome.output),
    }
    ExitCode::from(outcome.code as u8)
}
