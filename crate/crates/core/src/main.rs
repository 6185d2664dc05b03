use std::io;
use std::process::ExitCode;

use clap::Parser;
use pikdom::cli::{diagnostic, run, Cli, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match run(&cli, &mut io::stdout().lock(), &mut io::stderr().lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            EXIT_ERROR
        }
    };
    ExitCode::from(status as u8)
}
