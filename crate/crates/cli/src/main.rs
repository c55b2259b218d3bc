mod cli;
mod commands;
mod error;
mod plot;
mod report;

use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            let text = match cli.global.format {
                Format::Json => outcome.report.to_json(),
                Format::Text => outcome.report.to_text(),
            };
            print!("{text}");
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
