use std::io;
use std::process::ExitCode;

use bitri::cli::{run_cli, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_cli(&cli, &mut io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bitri: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
