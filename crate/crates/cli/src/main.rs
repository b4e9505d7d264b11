use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use margulis_cli::{configure_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli));
    let code = match result {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            outcome.code
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.code
        }
    };
    ExitCode::from(code as u8)
}
