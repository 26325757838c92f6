use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use whcalc::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let written = match &outcome.out {
                Some(path) => std::fs::write(path, &outcome.text),
                None => std::io::stdout().write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("whcalc: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("whcalc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
