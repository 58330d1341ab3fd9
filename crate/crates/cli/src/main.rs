use std::process::ExitCode;

use clap::Parser;
use incidence_workbench::cli::{execute, write_report, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(Some(r)) => r,
        Ok(None) => return ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write_report(&cli.output, &report) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        eprintln!("{}: some checks failed", report.experiment);
        ExitCode::from(1)
    }
}
