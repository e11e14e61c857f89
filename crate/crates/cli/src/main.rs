use std::process::ExitCode;

use clap::Parser;
use ffca_cli::{Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match ffca_cli::execute(&cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Invalid(invalid) = &e {
                eprintln!("error: scenario is invalid");
                for v in &invalid.0 {
                    eprintln!("  {v}");
                }
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
