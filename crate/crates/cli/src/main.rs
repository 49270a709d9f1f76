mod args;
mod commands;
mod grid;
mod table;

use std::process::ExitCode;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Clap(clap::Error),
    Config(String),
    Io(String),
}

impl From<clap::Error> for CliError {
    fn from(e: clap::Error) -> Self {
        CliError::Clap(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Clap(e) => write!(f, "{e}"),
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

fn run() -> Result<ExitCode, CliError> {
    let cli = Cli::load(std::env::args_os())?;
    let table = match &cli.command {
        Command::Ed(a) => commands::ed(a)?,
        Command::Phase(a) => commands::phase(a)?,
        Command::Rpa(a) => commands::rpa(a)?,
        Command::Perturb(a) => commands::perturb(a)?,
        Command::Fidelity(a) => commands::fidelity(a)?,
    };
    let outcome = table.run(cli.common.out.as_deref(), cli.common.resume, cli.common.jobs)?;
    log::info!(
        "{} computed, {} reused, {} failed",
        outcome.computed,
        outcome.reused,
        outcome.failed
    );
    Ok(if outcome.failed > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run() {
        Ok(code) => code,
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
