//! Library half of the `truncexp` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod render;
pub mod verify;

use std::io::Write;

use truncexp::SolveOptions;

use args::{Cli, Command};
use commands::{CliError, CliResult, TableRequest};
use render::{emit, Format, Layout};

/// Runs one parsed command, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let opts = SolveOptions {
        tol: cli.tol,
        max_iter: cli.max_iter,
        init: None,
    };
    opts.validate()?;
    match &cli.command {
        Command::Solve { family, n, delta, init } => {
            let opts = SolveOptions { init: *init, ..opts };
            let records = commands::solve(*family, *n, *delta, &opts)?;
            emit(out, cli.format, Layout::KeyValue, &records)?;
        }
        Command::Table(args) => {
            let req = TableRequest::from_args(args)?;
            let records = commands::table(&req, &opts, args.jobs)?;
            emit(out, cli.format, Layout::Table, &records)?;
        }
        Command::Series { family, n, order } => {
            let (scale, mut records) = commands::series(*family, *n, *order)?;
            if cli.format == Format::Human {
                writeln!(out, "argument_scale  {scale}")?;
                for r in &mut records {
                    r.retain(|(k, _)| k != "argument_scale");
                }
            }
            emit(out, cli.format, Layout::Table, &records)?;
        }
        Command::Min { family, n } => {
            let records = commands::min(*family, *n)?;
            emit(out, cli.format, Layout::KeyValue, &records)?;
        }
        Command::Verify => {
            let outcomes = verify::run()?;
            let records: Vec<_> = outcomes.iter().map(|o| o.record()).collect();
            emit(out, cli.format, Layout::Table, &records)?;
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if cli.format == Format::Human {
                writeln!(
                    out,
                    "verify: {} of {} cases passed",
                    outcomes.len() - failed,
                    outcomes.len()
                )?;
            }
            if failed > 0 {
                return Err(CliError::Check(format!("{failed} verification cases failed")));
            }
        }
    }
    Ok(())
}
