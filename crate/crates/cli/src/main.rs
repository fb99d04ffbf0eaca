mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;
use motdisc::Error;

use args::{Cli, Command};

/// Exit status for a library error: 2 for bad input, 3 for a refused
/// enumeration, 4 for an internal inconsistency, 1 otherwise.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidInput(_) => 2,
        Error::GuardExceeded { .. } => 3,
        Error::Internal(_) | Error::SeriesMismatch(_) => 4,
        _ => 1,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if let Error::GuardExceeded { .. } = e {
        eprintln!("hint: lower the size of the request, or raise --guard (above the default only with --force)");
    }
    ExitCode::from(exit_code(e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (result, output) = match &cli.command {
        Command::Series { kind, shape, common } => (commands::series(*kind, shape, common), common.output),
        Command::Limit { kind, shape, norm, offset, common } => {
            (commands::limit(*kind, shape, *norm, *offset, common), common.output)
        }
        Command::Hyper { s, ordered, m, d, common } => (commands::hyper(*s, *ordered, *m, *d, common), common.output),
        Command::Oracle { kind, params, common } => (commands::oracle(*kind, params, common), common.output),
        Command::Verify { suite, output } => {
            return match commands::verify(suite) {
                Ok(v) => {
                    if let Err(e) = v.report.emit(*output) {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                    ExitCode::from(if v.all_passed { 0 } else { 4 })
                }
                Err(e) => fail(&e),
            };
        }
    };
    match result {
        Ok(report) => match report.emit(output) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => fail(&e),
    }
}
