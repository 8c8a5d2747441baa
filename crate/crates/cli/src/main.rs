mod cli;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Command};
use commands::Status;

const EXIT_INPUT: u8 = 1;
const EXIT_CAP: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT),
            };
        }
    };
    let outcome = match &cli.command {
        Command::Cohomology(a) => commands::cohomology(a),
        Command::Scan(a) => commands::scan(a),
        Command::Nerve(a) => commands::nerve_cmd(a),
        Command::CheckSheaf(a) => commands::check_sheaf_cmd(a),
        Command::CheckFlabby(a) => commands::check_flabby_cmd(a),
        Command::Stalks(a) => commands::stalks_cmd(a),
        Command::Axioms(a) => commands::axioms_cmd(a),
    };
    match outcome {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violations) => ExitCode::from(EXIT_INPUT),
        Ok(Status::Indeterminate) => ExitCode::from(EXIT_CAP),
        Err(e) => {
            eprintln!("error: {e:#}");
            let capped = e
                .chain()
                .any(|c| c.downcast_ref::<closure_cohomology::Error>().is_some_and(|e| e.is_cap_exceeded()));
            ExitCode::from(if capped { EXIT_CAP } else { EXIT_INPUT })
        }
    }
}
