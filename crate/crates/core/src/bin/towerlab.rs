use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use towerlab::cli::{configure_threads, run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    let start = Instant::now();
    let name = cli.command.name();
    match run(&cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.report.to_json());
            eprintln!("towerlab {name}: {:.3} s", start.elapsed().as_secs_f64());
            match &outcome.status {
                Status::Ok => {}
                Status::TheoremViolation(msg) => eprintln!("theorem violation: {msg}"),
                Status::BudgetExceeded(msg) => eprintln!("budget exceeded: {msg}"),
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
