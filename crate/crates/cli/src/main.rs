use std::process::ExitCode;

use clap::Parser;
use fairqa::cli::Cli;
use fairqa::commands;
use fairqa::error::AppError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                AppError::Usage(msg) => eprintln!("error: {msg}"),
                AppError::Domain(e) => eprintln!("error: {e:#}"),
            }
            err.exit_code()
        }
    }
}
