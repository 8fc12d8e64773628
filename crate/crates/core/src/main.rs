use std::process::ExitCode;

use clap::Parser;

mod cli;

fn main() -> ExitCode {
    let args = cli::Cli::parse();
    match cli::run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(cli::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        // A closed downstream pipe (`| head`) is not an error.
        Err(cli::Failure::Compute(err)) if cli::is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(cli::Failure::Compute(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
