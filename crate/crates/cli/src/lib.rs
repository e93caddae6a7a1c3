//! Command-line front end for `anarchy-core`.
//!
//! Exit status: 0 on success, 1 when an `--expect` answer or the oracle
//! disagrees, 2 on bad input or usage.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod render;
pub mod report;

use std::io::Write;

pub use args::Cli;
pub use commands::Status;
pub use error::{CliError, Result};

use args::Command;

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    let status = match &cli.command {
        Command::Analyze(a) => commands::analyze(a, out)?,
        Command::Check(a) => commands::check_cmd(a, out)?,
        Command::Enumerate(a) => commands::enumerate(a, out)?,
        Command::Poa(a) => commands::poa(a, out)?,
        Command::Dynamics(a) => commands::dynamics(a, out)?,
        Command::Construct(a) => commands::construct(a, out)?,
        Command::Oracle(a) => commands::oracle(a, out)?,
    };
    out.flush()?;
    Ok(status)
}
