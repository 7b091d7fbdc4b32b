//! `feasor` command-line frontend.
//!
//! Exit codes: 0 success, 1 solver failure, 2 configuration error, 3 I/O error.

use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod output;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Solver(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<feasor::Error> for CliError {
    fn from(e: feasor::Error) -> Self {
        match e {
            feasor::Error::Numerical { .. } => CliError::Solver(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::SolveQueens(a) => commands::solve_queens_cmd(a),
        Command::BenchQueens(a) => commands::bench_queens_cmd(a),
        Command::SolveMoments(a) => commands::solve_moments_cmd(a),
        Command::Demo2d(a) => commands::demo_2d_cmd(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
