use std::process::ExitCode;

use bridge_forge::Error;
use clap::Parser;

mod cli;
mod commands;
mod output;

/// Outcome of a subcommand, mapped onto the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Truncated,
}

fn main() -> ExitCode {
    let args = cli::Cli::parse();
    match commands::run(args) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Ok(Outcome::Truncated) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Invariant(_) | Error::Oracle(_) => 1,
                _ => 2,
            })
        }
    }
}
