use std::io;
use std::process::ExitCode;

use clap::Parser;
use prismrn_cli::{exit_for, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut stdout, mut stderr) = (io::stdout().lock(), io::stderr().lock());
    match run(cli, &mut stdout, &mut stderr) {
        Ok(exit) => ExitCode::from(exit as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_for(&err) as u8)
        }
    }
}
