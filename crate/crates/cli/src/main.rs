use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use eulerian_lab_cli::{error_exit_code, execute, render, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_exit_code(&e) as u8);
        }
    };
    let text = render(&report, cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
