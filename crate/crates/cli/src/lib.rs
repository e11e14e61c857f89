//! Command-line front end for `ffca-core`: single runs, multi-seed batches
//! and one-parameter sweeps, with CSV and raster output.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 invalid scenario,
//! 4 I/O error.

pub mod commands;
pub mod config;
pub mod error;

use std::io::Write;

pub use config::{Cli, Command, RunConfig};
pub use error::CliError;

/// Executes a parsed command line, writing the human-readable report to `out`.
pub fn execute(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Run(args) => commands::cmd_run(&RunConfig::from_args(args)?, out),
        Command::Sweep(args) => {
            let config = RunConfig::from_args(&args.common)?;
            let (key, values) = config::parse_sweep(&args.sweep)?;
            commands::cmd_sweep(&config, key, &values, out)
        }
    }
}
