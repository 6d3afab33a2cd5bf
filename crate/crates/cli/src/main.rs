use std::process::ExitCode;

use clap::Parser;
use nearoct_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            if !outcome.summary.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Verification(_) = e {
                eprintln!("see the reports under {}", cli.cache_dir.display());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
