//! `lacuna`: command-line front end. Exit status 0 when everything checked
//! passes, 1 on a verification failure, 2 on usage or configuration errors.

mod args;
mod commands;
mod config;
mod output;

use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use args::{Cli, Command};
use output::Output;

fn run(cli: &Cli) -> Result<Option<Output>> {
    Ok(Some(match &cli.command {
        Command::Bernoulli(a) => commands::bernoulli_cmd(a)?,
        Command::Alpha(a) => commands::alpha_cmd(a)?,
        Command::Verify(a) => {
            let mut params = config::load()?;
            if let Some(seed) = cli.seed {
                params.seed = seed;
            }
            if cli.tol.is_some() {
                params.tol = cli.tol;
            }
            commands::apply_overrides(&a.identity, a, &mut params)?;
            commands::verify_cmd(a, &params)?
        }
        Command::Lattice(a) => commands::lattice_cmd(a)?,
        Command::Eisenstein(a) => commands::eisenstein_cmd(a, cli.tol)?,
        Command::Export(a) => return commands::export_cmd(a, cli.format),
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(out)) => match out.emit(cli.format, cli.out.as_deref()) {
            Ok(()) if out.ok => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
