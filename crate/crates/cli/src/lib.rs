//! Front end for `gupnl-core`: argument parsing, settings resolution and
//! JSON / CSV / text output.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::{CommandFactory, FromArgMatches};

use crate::args::{Cli, Command};
use crate::commands::Outcome;
use crate::config::RunConfig;
use crate::error::{exit, CliError, CliResult};

fn dispatch(command: &Command, cfg: &RunConfig) -> CliResult<Outcome<'static>> {
    match command {
        Command::Roots { p } => commands::roots(*p, cfg),
        Command::Scan { p_min, p_max, steps } => commands::scan(*p_min, *p_max, *steps, cfg),
        Command::Entangle { state } => commands::entangle(state, cfg),
        Command::Sample { state, n, real_part_only } => commands::sample(state, *n, *real_part_only, cfg),
        Command::Uncertainty { grid, linear } => commands::uncertainty(grid, *linear, cfg),
        Command::Limit { p, beta_start, decades, per_decade } => {
            commands::limit(*p, *beta_start, *decades, *per_decade, cfg)
        }
    }
}

fn execute(cli: &Cli, cfg: &RunConfig) -> CliResult<()> {
    let outcome = dispatch(&cli.command, cfg)?;
    let stderr = io::stderr();
    let mut side = stderr.lock();
    for w in &outcome.warnings {
        writeln!(side, "warning: {w}")?;
    }
    let mut out: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    output::render(outcome.report, cfg.format, &mut out, &mut side)?;
    out.flush()?;
    Ok(())
}

/// Run with the given argument list (program name first); returns the exit status.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
        }
    };
    let result = Cli::from_arg_matches(&matches)
        .map_err(|e| CliError::usage(e.to_string()))
        .and_then(|cli| {
            let cfg = config::resolve(&cli.global, &matches)?;
            execute(&cli, &cfg)
        });
    match result {
        Ok(()) => exit::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => exit::SUCCESS,
        Err(e) => {
            eprintln!("gupnl: {e}");
            e.exit_code()
        }
    }
}
